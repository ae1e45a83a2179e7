//! Polynomials in F_q[t][z]: z-polynomials whose coefficients live in F_q[t].
//!
//! The height of a nonzero element is the maximum t-degree among its
//! z-coefficients (the Gauss norm exponent); it is additive under products.
//! Gcds and resultants in z run over the fraction field F_q(t) via the
//! fraction-free subresultant remainder sequence.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{ExtFieldElem, ExtPoly, FieldCtx, Fq, FqElem};
use crate::polyring::upoly::UPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    /// Coefficient of z^i at index i; the last entry is nonzero.
    coeffs: Vec<UPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one(fq: &Fq) -> Self {
        Self::constant(UPoly::one(fq))
    }

    pub fn constant(c: UPoly) -> Self {
        let mut out = BiPoly { coeffs: vec![c] };
        out.normalize();
        out
    }

    /// The monomial z.
    pub fn z_var(fq: &Fq) -> Self {
        BiPoly {
            coeffs: vec![UPoly::zero(fq), UPoly::one(fq)],
        }
    }

    /// c(t) * z^k.
    pub fn monomial(k: usize, c: UPoly, fq: &Fq) -> Self {
        let mut coeffs = vec![UPoly::zero(fq); k];
        coeffs.push(c);
        let mut out = BiPoly { coeffs };
        out.normalize();
        out
    }

    pub fn from_z_coeffs(coeffs: Vec<UPoly>) -> Self {
        let mut out = BiPoly { coeffs };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_z(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Maximum t-degree among the z-coefficients.
    pub fn height(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self
            .coeffs
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .expect("some coefficient is nonzero"))
    }

    pub fn coeff_z(&self, i: usize, fq: &Fq) -> UPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| UPoly::zero(fq))
    }

    pub fn z_coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn lc_z(&self) -> Option<&UPoly> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self, fq: &Fq) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = UPoly::zero(fq);
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            coeffs.push(a.add(b, fq));
        }
        Self::from_z_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self, fq: &Fq) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = UPoly::zero(fq);
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            coeffs.push(a.sub(b, fq));
        }
        Self::from_z_coeffs(coeffs)
    }

    pub fn neg(&self, fq: &Fq) -> Self {
        Self::from_z_coeffs(self.coeffs.iter().map(|c| c.neg(fq)).collect())
    }

    pub fn mul(&self, other: &Self, fq: &Fq) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![UPoly::zero(fq); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b, fq), fq);
            }
        }
        Self::from_z_coeffs(coeffs)
    }

    pub fn scale_upoly(&self, c: &UPoly, fq: &Fq) -> Self {
        Self::from_z_coeffs(self.coeffs.iter().map(|x| x.mul(c, fq)).collect())
    }

    pub fn scale_fq(&self, c: &FqElem, fq: &Fq) -> Self {
        Self::from_z_coeffs(self.coeffs.iter().map(|x| x.scale(c, fq)).collect())
    }

    /// self * c(t) * z^k.
    pub fn mul_monomial(&self, k: usize, c: &UPoly, fq: &Fq) -> Self {
        if self.is_zero() || c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![UPoly::zero(fq); k];
        coeffs.extend(self.coeffs.iter().map(|x| x.mul(c, fq)));
        Self::from_z_coeffs(coeffs)
    }

    /// f(z)^(q^k): z-exponents stretch by q^k and every coefficient is
    /// raised to the q^k-th power coefficient-wise (freshman's dream).
    pub fn pow_q_jump(&self, k: usize, fq: &Fq) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let spacing_u128 = (fq.order() as u128).pow(k as u32);
        assert!(spacing_u128 <= (1 << 32), "q^k stretch too large");
        let spacing = spacing_u128 as usize;
        let n = self.coeffs.len();
        let mut coeffs = vec![UPoly::zero(fq); (n - 1) * spacing + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * spacing] = c.pow_q_jump(k, fq);
            }
        }
        Self::from_z_coeffs(coeffs)
    }

    pub fn z_derivative(&self, fq: &Fq) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            coeffs.push(c.scale(&fq.from_u64(i as u64), fq));
        }
        Self::from_z_coeffs(coeffs)
    }

    /// Monic gcd over F_q[t] of all z-coefficients; zero for the zero
    /// polynomial.
    pub fn content(&self, fq: &Fq) -> UPoly {
        let mut acc = UPoly::zero(fq);
        for c in &self.coeffs {
            acc = acc.gcd(c, fq);
            if acc.degree() == Some(0) {
                break;
            }
        }
        acc
    }

    /// Split off the content: f = c * g with c the monic coefficient gcd and
    /// g primitive.
    pub fn content_primitive(&self, fq: &Fq) -> Result<(UPoly, BiPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let c = self.content(fq);
        let g = Self::from_z_coeffs(
            self.coeffs
                .iter()
                .map(|x| x.exact_div(&c, fq))
                .collect::<Result<Vec<_>>>()?,
        );
        Ok((c, g))
    }

    pub fn primitive_part(&self, fq: &Fq) -> Result<BiPoly> {
        Ok(self.content_primitive(fq)?.1)
    }

    /// Pseudo-division: returns (Q, R, k) with lc(d)^k * self = Q*d + R and
    /// deg_z R < deg_z d, where k = max(deg self - deg d + 1, 0).
    pub fn pseudo_divrem(&self, d: &Self, fq: &Fq) -> Result<(Self, Self, usize)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.deg_z().unwrap();
        match self.deg_z() {
            None => return Ok((Self::zero(), Self::zero(), 0)),
            Some(df) if df < dd => return Ok((Self::zero(), self.clone(), 0)),
            _ => {}
        }
        let lc = d.lc_z().unwrap().clone();
        let k = self.deg_z().unwrap() - dd + 1;
        let mut e = k;
        let mut quo = Self::zero();
        let mut rem = self.clone();
        while let Some(dr) = rem.deg_z() {
            if dr < dd {
                break;
            }
            let top = rem.lc_z().unwrap().clone();
            let shift = dr - dd;
            quo = quo.scale_upoly(&lc, fq);
            quo = quo.add(&Self::monomial(shift, top.clone(), fq), fq);
            rem = rem.scale_upoly(&lc, fq);
            rem = rem.sub(&d.mul_monomial(shift, &top, fq), fq);
            e -= 1;
        }
        if e > 0 {
            let factor = lc.pow(e as u64, fq);
            quo = quo.scale_upoly(&factor, fq);
            rem = rem.scale_upoly(&factor, fq);
        }
        Ok((quo, rem, k))
    }

    /// Exact quotient in F_q[t][z]; the divisor must divide self there.
    pub fn exact_div(&self, d: &Self, fq: &Fq) -> Result<Self> {
        if self.is_zero() {
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::zero());
        }
        let (quo, rem, k) = self.pseudo_divrem(d, fq)?;
        if !rem.is_zero() {
            return Err(Error::InexactDivision);
        }
        let factor = d.lc_z().unwrap().pow(k as u64, fq);
        let coeffs = quo
            .coeffs
            .iter()
            .map(|c| c.exact_div(&factor, fq))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_z_coeffs(coeffs))
    }

    /// Specialization t -> tau applied to every coefficient.
    pub fn specialize(&self, tau: &ExtFieldElem, ctx: &FieldCtx) -> ExtPoly {
        ExtPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| c.eval_ext(tau, ctx))
                .collect(),
        )
    }

    /// For f with vanishing z-derivative, f(z) = g(z^p); returns g.
    fn unp_power(&self, fq: &Fq) -> Self {
        let p = fq.p() as usize;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                coeffs.push(c.clone());
            } else {
                debug_assert!(c.is_zero(), "z-derivative was nonzero");
            }
        }
        Self::from_z_coeffs(coeffs)
    }

    /// Number of distinct roots in an algebraic closure of F_q(t).
    ///
    /// Contents are units of F_q(t) and never contribute roots. Exponent
    /// patterns z^p are unwound (Frobenius is a bijection on the closure);
    /// otherwise split along gcd(f, f') with inclusion-exclusion.
    pub fn distinct_root_count(&self, fq: &Fq) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.primitive_part(fq)?.drc(fq))
    }

    fn drc(&self, fq: &Fq) -> usize {
        let deg = self.deg_z().expect("nonzero");
        if deg == 0 {
            return 0;
        }
        let deriv = self.z_derivative(fq);
        if deriv.is_zero() {
            return self.unp_power(fq).drc(fq);
        }
        let d = gcd_primitive(self, &deriv, fq);
        if d.deg_z() == Some(0) {
            return deg;
        }
        let u = self
            .exact_div(&d, fq)
            .expect("primitive gcd divides the primitive part");
        let overlap = gcd_primitive(&u, &d, fq);
        u.primitive_part(fq).unwrap().drc(fq) + d.drc(fq) - overlap.drc(fq)
    }

    /// The maximal separable squarefree divisor prim(f / gcd(f, f')).
    /// Returns 1 when the z-derivative vanishes identically or f is
    /// constant in z.
    pub fn separable_part(&self, fq: &Fq) -> Result<BiPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.primitive_part(fq)?;
        if f.deg_z() == Some(0) {
            return Ok(Self::one(fq));
        }
        let deriv = f.z_derivative(fq);
        if deriv.is_zero() {
            return Ok(Self::one(fq));
        }
        let d = gcd_primitive(&f, &deriv, fq);
        let w = f.exact_div(&d, fq)?;
        Ok(normalize_lc_monic(&w.primitive_part(fq)?, fq))
    }

    pub fn display<'a>(&'a self) -> DisplayBiPoly<'a> {
        DisplayBiPoly { poly: self }
    }
}

impl fmt::Display for BiPoly {
    /// Canonical list form: `[[i,coeffs],...]` over nonzero z-exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "[{i},{c}]")?;
        }
        write!(f, "]")
    }
}

pub struct DisplayBiPoly<'a> {
    poly: &'a BiPoly,
}

impl fmt::Display for DisplayBiPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.poly.coeffs.len()).rev() {
            let c = &self.poly.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({})", c.display("t"))?,
                1 => write!(f, "({})*z", c.display("t"))?,
                _ => write!(f, "({})*z^{}", c.display("t"), i)?,
            }
        }
        Ok(())
    }
}

/// Scale so the leading z-coefficient is monic in t. The input must be
/// nonzero.
fn normalize_lc_monic(f: &BiPoly, fq: &Fq) -> BiPoly {
    let lead = f.lc_z().expect("nonzero").lc();
    let inv = fq.inv(&lead).expect("leading coefficient nonzero");
    f.scale_fq(&inv, fq)
}

/// The greatest primitive common divisor of f and g in F_q[t][z],
/// normalized so its leading z-coefficient is monic in t. Computed by the
/// fraction-free subresultant remainder sequence. Constants in z are units
/// of F_q(t)[z], so any z-constant input forces the answer 1.
pub fn gcd_primitive(f: &BiPoly, g: &BiPoly, fq: &Fq) -> BiPoly {
    assert!(
        !(f.is_zero() && g.is_zero()),
        "gcd of two zero polynomials is undefined"
    );
    if f.is_zero() {
        return normalize_lc_monic(&g.primitive_part(fq).unwrap(), fq);
    }
    if g.is_zero() {
        return normalize_lc_monic(&f.primitive_part(fq).unwrap(), fq);
    }
    if f.deg_z() == Some(0) || g.deg_z() == Some(0) {
        return BiPoly::one(fq);
    }
    let mut a = f.primitive_part(fq).unwrap();
    let mut b = g.primitive_part(fq).unwrap();
    if a.deg_z() < b.deg_z() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g_ = UPoly::one(fq);
    let mut h_ = UPoly::one(fq);
    loop {
        let delta = a.deg_z().unwrap() - b.deg_z().unwrap();
        let (_, r, _) = a.pseudo_divrem(&b, fq).expect("b is nonzero");
        if r.is_zero() {
            return normalize_lc_monic(&b.primitive_part(fq).unwrap(), fq);
        }
        if r.deg_z() == Some(0) {
            return BiPoly::one(fq);
        }
        a = b;
        let divisor = g_.mul(&h_.pow(delta as u64, fq), fq);
        b = BiPoly::from_z_coeffs(
            r.z_coeffs()
                .iter()
                .map(|c| c.exact_div(&divisor, fq).expect("subresultant step divides"))
                .collect(),
        );
        g_ = a.lc_z().unwrap().clone();
        h_ = if delta == 0 {
            h_
        } else {
            g_.pow(delta as u64, fq)
                .exact_div(&h_.pow(delta as u64 - 1, fq), fq)
                .expect("subresultant auxiliary division is exact")
        };
    }
}

/// Resultant with respect to z, an element of F_q[t]. Zero exactly when the
/// inputs share a factor of positive z-degree.
pub fn resultant(f: &BiPoly, g: &BiPoly, fq: &Fq) -> Result<UPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let df = f.deg_z().unwrap();
    let dg = g.deg_z().unwrap();
    if df == 0 && dg == 0 {
        return Err(Error::BothConstant);
    }
    if dg == 0 {
        return Ok(g.coeff_z(0, fq).pow(df as u64, fq));
    }
    if df == 0 {
        return Ok(f.coeff_z(0, fq).pow(dg as u64, fq));
    }
    let (cf, fp) = f.content_primitive(fq)?;
    let (cg, gp) = g.content_primitive(fq)?;
    let content = cf.pow(dg as u64, fq).mul(&cg.pow(df as u64, fq), fq);

    let mut a = fp;
    let mut b = gp;
    let mut negate = false;
    if a.deg_z() < b.deg_z() {
        std::mem::swap(&mut a, &mut b);
        if df % 2 == 1 && dg % 2 == 1 {
            negate = !negate;
        }
    }
    let mut g_ = UPoly::one(fq);
    let mut h_ = UPoly::one(fq);
    loop {
        let da = a.deg_z().unwrap();
        let db = b.deg_z().unwrap();
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let delta = da - db;
        let (_, r, _) = a.pseudo_divrem(&b, fq).expect("b is nonzero");
        if r.is_zero() {
            // positive-degree common factor (db >= 1 here)
            return Ok(UPoly::zero(fq));
        }
        a = b;
        let divisor = g_.mul(&h_.pow(delta as u64, fq), fq);
        b = BiPoly::from_z_coeffs(
            r.z_coeffs()
                .iter()
                .map(|c| c.exact_div(&divisor, fq).expect("subresultant step divides"))
                .collect(),
        );
        g_ = a.lc_z().unwrap().clone();
        h_ = if delta == 0 {
            h_
        } else {
            g_.pow(delta as u64, fq)
                .exact_div(&h_.pow(delta as u64 - 1, fq), fq)
                .expect("subresultant auxiliary division is exact")
        };
        if b.deg_z() == Some(0) {
            let da = a.deg_z().unwrap();
            let lead = b.coeff_z(0, fq);
            let num = lead.pow(da as u64, fq);
            let res_pp = if da <= 1 {
                num
            } else {
                num.exact_div(&h_.pow(da as u64 - 1, fq), fq)
                    .expect("final subresultant division is exact")
            };
            let mut res = content.mul(&res_pp, fq);
            if negate {
                res = res.neg(fq);
            }
            return Ok(res);
        }
    }
}
