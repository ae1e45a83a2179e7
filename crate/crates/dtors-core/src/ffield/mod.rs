//! Finite fields F_q and their extensions F_{q^N}.
//!
//! A [`FieldCtx`] fixes one concrete model of F_{q^N}: the quotient of
//! F_q[x] by the deterministic modulus returned by [`find_irreducible`].
//! Elements are coordinate vectors over F_q and only interact within the
//! context that created them; each element carries its context fingerprint
//! and the arithmetic asserts agreement.

pub mod extpoly;
pub mod fq;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::DependenceFinder;
use crate::polyring::upoly::UPoly;

pub use extpoly::ExtPoly;
pub use fq::{Fq, FqElem};

/// An element of F_{q^N}, stored as N coordinates over F_q (flat over F_p).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtFieldElem {
    ctx_id: u64,
    data: Vec<u64>,
}

impl ExtFieldElem {
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    /// Coordinates over F_q, low power first.
    pub fn coords(&self, ctx: &FieldCtx) -> Vec<FqElem> {
        ctx.check(self);
        let e = ctx.base.e();
        (0..ctx.degree)
            .map(|i| FqElem::from_raw(self.data[i * e..(i + 1) * e].to_vec()))
            .collect()
    }

    /// Counting-order index of the element inside its field.
    pub fn index(&self, ctx: &FieldCtx) -> u64 {
        ctx.check(self);
        let p = ctx.base.p();
        let mut v = 0u64;
        for &c in self.data.iter().rev() {
            v = v * p + c;
        }
        v
    }
}

impl PartialOrd for ExtFieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtFieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ctx_id
            .cmp(&other.ctx_id)
            .then_with(|| fq::cmp_counting(&self.data, &other.data))
    }
}

impl fmt::Display for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Canonical form needs the block structure; stored flat, we cannot
        // know e here, so Display is only provided through the context.
        write!(f, "<elem:{:?}>", self.data)
    }
}

/// One concrete model of the field F_{q^N}.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    base: Fq,
    degree: usize,
    modulus: UPoly,
    id: u64,
}

impl FieldCtx {
    pub fn new(base: Fq, degree: usize) -> Result<FieldCtx> {
        if degree == 0 {
            return Err(Error::InvalidParams("extension degree must be >= 1".into()));
        }
        let bits = (64 - base.p().leading_zeros() as usize) * base.e() * degree;
        if bits > 32 || base.e() >= (1 << 12) || degree >= (1 << 12) {
            return Err(Error::ParamsTooLarge(format!(
                "q^N = {}^{} is beyond the supported range",
                base.order(),
                degree
            )));
        }
        let modulus = find_irreducible(&base, degree);
        let id = (base.p() << 24) | ((base.e() as u64) << 12) | degree as u64;
        Ok(FieldCtx {
            base,
            degree,
            modulus,
            id,
        })
    }

    pub fn base(&self) -> &Fq {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// q^N.
    pub fn order(&self) -> u64 {
        self.base.order().pow(self.degree as u32)
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    fn check(&self, a: &ExtFieldElem) {
        assert_eq!(
            a.ctx_id, self.id,
            "element belongs to a different field context"
        );
    }

    /// Same base field and compatible fingerprint check, as a Result.
    pub fn try_check(&self, a: &ExtFieldElem) -> Result<()> {
        if a.ctx_id == self.id {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn zero(&self) -> ExtFieldElem {
        ExtFieldElem {
            ctx_id: self.id,
            data: vec![0; self.degree * self.base.e()],
        }
    }

    pub fn one(&self) -> ExtFieldElem {
        self.scalar(&self.base.one())
    }

    /// The residue class of x, i.e. a root of the modulus.
    pub fn gen(&self) -> ExtFieldElem {
        if self.degree == 1 {
            // x mod (x - c) is the constant root c; for degree 1 the modulus
            // is x itself, so the generator is 0. Callers wanting a field
            // generator of F_q/F_q should use scalars instead.
            let c = self.base.neg(&self.modulus.coeff(0));
            return self.scalar(&c);
        }
        let mut elem = self.zero();
        let e = self.base.e();
        let one = self.base.one();
        elem.data[e..2 * e].copy_from_slice(one.coords());
        elem
    }

    pub fn scalar(&self, c: &FqElem) -> ExtFieldElem {
        debug_assert_eq!(c.coords().len(), self.base.e());
        let mut elem = self.zero();
        elem.data[..self.base.e()].copy_from_slice(c.coords());
        elem
    }

    /// Build an element from F_q coordinates (low power first, padded).
    pub fn from_coords(&self, coords: &[FqElem]) -> Result<ExtFieldElem> {
        if coords.len() > self.degree {
            return Err(Error::InvalidParams(format!(
                "{} coordinates in an extension of degree {}",
                coords.len(),
                self.degree
            )));
        }
        let mut elem = self.zero();
        let e = self.base.e();
        for (i, c) in coords.iter().enumerate() {
            if c.coords().len() != e {
                return Err(Error::InvalidParams(
                    "coordinate has the wrong base-field degree".into(),
                ));
            }
            elem.data[i * e..(i + 1) * e].copy_from_slice(c.coords());
        }
        Ok(elem)
    }

    pub fn elem_from_index(&self, mut idx: u64) -> ExtFieldElem {
        let p = self.base.p();
        let mut elem = self.zero();
        for slot in elem.data.iter_mut() {
            *slot = idx % p;
            idx /= p;
        }
        elem
    }

    /// All q^N elements in counting order.
    pub fn elements(&self) -> impl Iterator<Item = ExtFieldElem> + '_ {
        (0..self.order()).map(move |i| self.elem_from_index(i))
    }

    fn as_upoly(&self, a: &ExtFieldElem) -> UPoly {
        UPoly::from_raw(self.base.e(), a.data.clone())
    }

    fn from_upoly(&self, f: &UPoly) -> ExtFieldElem {
        let mut elem = self.zero();
        let n = f.num_coeffs();
        debug_assert!(n <= self.degree);
        let e = self.base.e();
        for i in 0..n {
            elem.data[i * e..(i + 1) * e].copy_from_slice(f.block(i));
        }
        elem
    }

    pub fn add(&self, a: &ExtFieldElem, b: &ExtFieldElem) -> ExtFieldElem {
        self.check(a);
        self.check(b);
        let p = self.base.p();
        let mut out = a.clone();
        for (x, y) in out.data.iter_mut().zip(&b.data) {
            *x = (*x + *y) % p;
        }
        out
    }

    pub fn sub(&self, a: &ExtFieldElem, b: &ExtFieldElem) -> ExtFieldElem {
        self.check(a);
        self.check(b);
        let p = self.base.p();
        let mut out = a.clone();
        for (x, y) in out.data.iter_mut().zip(&b.data) {
            *x = (*x + p - *y) % p;
        }
        out
    }

    pub fn neg(&self, a: &ExtFieldElem) -> ExtFieldElem {
        self.check(a);
        let p = self.base.p();
        let mut out = a.clone();
        for x in out.data.iter_mut() {
            *x = (p - *x) % p;
        }
        out
    }

    pub fn mul(&self, a: &ExtFieldElem, b: &ExtFieldElem) -> ExtFieldElem {
        self.check(a);
        self.check(b);
        let prod = self.as_upoly(a).mul(&self.as_upoly(b), &self.base);
        let red = prod
            .rem(&self.modulus, &self.base)
            .expect("modulus is nonzero");
        self.from_upoly(&red)
    }

    pub fn inv(&self, a: &ExtFieldElem) -> Result<ExtFieldElem> {
        self.check(a);
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, u, _) = self.as_upoly(a).xgcd(&self.modulus, &self.base);
        debug_assert_eq!(g.degree(), Some(0), "modulus is irreducible");
        let scale = self.base.inv(&g.coeff(0))?;
        let inv = u.scale(&scale, &self.base).rem(&self.modulus, &self.base)?;
        Ok(self.from_upoly(&inv))
    }

    pub fn pow(&self, a: &ExtFieldElem, mut exp: u64) -> ExtFieldElem {
        self.check(a);
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            if exp > 1 {
                base = self.mul(&base, &base);
            }
            exp >>= 1;
        }
        acc
    }

    /// a^(q^k); the identity for k ≡ 0 mod N.
    pub fn frobenius(&self, a: &ExtFieldElem, k: usize) -> ExtFieldElem {
        self.check(a);
        let steps = k % self.degree;
        let q = self.base.order();
        let mut out = a.clone();
        for _ in 0..steps {
            out = self.pow(&out, q);
        }
        out
    }

    /// Monic polynomial over F_q of least degree vanishing at `a`.
    pub fn minimal_polynomial(&self, a: &ExtFieldElem) -> UPoly {
        self.check(a);
        let mut finder = DependenceFinder::new(&self.base, self.degree);
        let mut power = self.one();
        loop {
            let coords = self.coords_vec(&power);
            if let Some(combo) = finder.push(coords) {
                // power = sum combo_i * a^i, so the minimal polynomial is
                // t^k - sum combo_i t^i.
                let k = combo.len();
                let mut coeffs: Vec<FqElem> =
                    combo.iter().map(|c| self.base.neg(c)).collect();
                coeffs.push(self.base.one());
                debug_assert_eq!(coeffs.len(), k + 1);
                return UPoly::from_coeffs(&self.base, &coeffs);
            }
            power = self.mul(&power, a);
        }
    }

    fn coords_vec(&self, a: &ExtFieldElem) -> Vec<FqElem> {
        let e = self.base.e();
        (0..self.degree)
            .map(|i| FqElem::from_raw(a.data[i * e..(i + 1) * e].to_vec()))
            .collect()
    }

    /// Whether F_q(a) is the whole extension.
    pub fn is_generator(&self, a: &ExtFieldElem) -> bool {
        self.minimal_polynomial(a).degree() == Some(self.degree)
    }

    /// Image of `a` (an element of this context) in `target`, whose degree
    /// must be a multiple of this one over the same base field.
    ///
    /// The embedding is the ring homomorphism fixing F_q that sends this
    /// context's generator to the counting-order least root of the modulus
    /// in `target`; every element maps to a root of its minimal polynomial.
    pub fn embed_into(&self, a: &ExtFieldElem, target: &FieldCtx) -> Result<ExtFieldElem> {
        self.check(a);
        if self.base != target.base {
            return Err(Error::CtxMismatch);
        }
        if target.degree % self.degree != 0 {
            return Err(Error::DegreeNotDivisible {
                src: self.degree,
                dst: target.degree,
            });
        }
        if self.id == target.id {
            return Ok(a.clone());
        }
        let gen_image = self.generator_image(target)?;
        Ok(self.embed_via(a, &gen_image, target))
    }

    /// The counting-order least root of this context's modulus in `target`.
    /// Shared by all embeddings between the pair, so batch callers can scan
    /// once and reuse it with [`FieldCtx::embed_via`].
    pub fn generator_image(&self, target: &FieldCtx) -> Result<ExtFieldElem> {
        if self.base != target.base {
            return Err(Error::CtxMismatch);
        }
        if target.degree % self.degree != 0 {
            return Err(Error::DegreeNotDivisible {
                src: self.degree,
                dst: target.degree,
            });
        }
        if self.degree == 1 {
            return Ok(target.scalar(&self.base.neg(&self.modulus.coeff(0))));
        }
        for candidate in target.elements() {
            if self.modulus.eval_ext(&candidate, target).is_zero() {
                return Ok(candidate);
            }
        }
        unreachable!("the target contains a subfield splitting the modulus")
    }

    /// Evaluate the coordinate polynomial of `a` at a fixed generator image.
    pub fn embed_via(
        &self,
        a: &ExtFieldElem,
        gen_image: &ExtFieldElem,
        target: &FieldCtx,
    ) -> ExtFieldElem {
        self.check(a);
        let coords = self.coords_vec(a);
        let mut acc = target.zero();
        for c in coords.iter().rev() {
            acc = target.mul(&acc, gen_image);
            acc = target.add(&acc, &target.scalar(c));
        }
        acc
    }

    /// Canonical text form `[c0,c1,...]` with F_q coordinates low power first.
    pub fn format_elem(&self, a: &ExtFieldElem) -> String {
        self.check(a);
        let coords = self.coords_vec(a);
        let mut s = String::from("[");
        for (i, c) in coords.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&c.to_string());
        }
        s.push(']');
        s
    }
}

/// The counting-order least monic irreducible of degree `n` over F_q.
/// Deterministic across runs: candidates are enumerated by the base-q value
/// of their non-leading coefficient string and tested in turn.
pub fn find_irreducible(fq: &Fq, n: usize) -> UPoly {
    assert!(n >= 1);
    let q = fq.order();
    let total = (q as u128).pow(n as u32);
    let mut idx: u128 = 0;
    while idx < total {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut rest = idx;
        for _ in 0..n {
            coeffs.push(fq.elem_from_index((rest % q as u128) as u64));
            rest /= q as u128;
        }
        coeffs.push(fq.one());
        let cand = UPoly::from_coeffs(fq, &coeffs);
        if is_irreducible(&cand, fq).expect("candidate is nonzero") {
            return cand;
        }
        idx += 1;
    }
    unreachable!("irreducibles of every degree exist over a finite field")
}

/// Distinct-degree irreducibility test: f is irreducible over F_q iff
/// gcd(f, t^(q^i) - t) = 1 for i <= deg(f)/2 and f divides t^(q^deg f) - t.
pub fn is_irreducible(f: &UPoly, fq: &Fq) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = f.degree().unwrap();
    if deg == 0 {
        return Ok(false);
    }
    let f = f.monic(fq);
    if deg == 1 {
        return Ok(true);
    }
    let t = UPoly::var(fq);
    let q = fq.order();
    let mut x_pow = t.rem(&f, fq)?;
    for _ in 1..=deg / 2 {
        x_pow = pow_mod(&x_pow, q, &f, fq);
        let g = x_pow.sub(&t, fq).gcd(&f, fq);
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    for _ in deg / 2 + 1..=deg {
        x_pow = pow_mod(&x_pow, q, &f, fq);
    }
    Ok(x_pow == t.rem(&f, fq)?)
}

fn pow_mod(a: &UPoly, mut exp: u64, modulus: &UPoly, fq: &Fq) -> UPoly {
    let mut acc = UPoly::one(fq);
    let mut base = a.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.mul(&base, fq).rem(modulus, fq).unwrap();
        }
        if exp > 1 {
            base = base.mul(&base, fq).rem(modulus, fq).unwrap();
        }
        exp >>= 1;
    }
    acc
}
