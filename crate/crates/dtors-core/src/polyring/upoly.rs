//! Dense univariate polynomials over F_q, low-degree first.
//!
//! Coefficients are stored flat: block `i` of `stride` words is the i-th
//! coefficient's F_p coordinate vector. The zero polynomial has no blocks.
//! The last stored block is always nonzero.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::fq::{pf_add_assign, pf_mul_acc, pf_neg, pf_rem, pf_sub_assign, Fq, FqElem};
use crate::ffield::{ExtFieldElem, FieldCtx};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly {
    stride: usize,
    data: Vec<u64>,
}

impl UPoly {
    pub fn zero(fq: &Fq) -> Self {
        UPoly {
            stride: fq.e(),
            data: Vec::new(),
        }
    }

    pub fn one(fq: &Fq) -> Self {
        Self::constant(fq, fq.one())
    }

    /// The monomial t.
    pub fn var(fq: &Fq) -> Self {
        Self::monomial(fq, 1, fq.one())
    }

    pub fn constant(fq: &Fq, c: FqElem) -> Self {
        let mut out = UPoly {
            stride: fq.e(),
            data: c.coords().to_vec(),
        };
        out.normalize();
        out
    }

    /// c * t^k.
    pub fn monomial(fq: &Fq, k: usize, c: FqElem) -> Self {
        let stride = fq.e();
        let mut data = vec![0u64; (k + 1) * stride];
        data[k * stride..].copy_from_slice(c.coords());
        let mut out = UPoly { stride, data };
        out.normalize();
        out
    }

    pub fn from_coeffs(fq: &Fq, coeffs: &[FqElem]) -> Self {
        let stride = fq.e();
        let mut data = Vec::with_capacity(coeffs.len() * stride);
        for c in coeffs {
            debug_assert_eq!(c.coords().len(), stride);
            data.extend_from_slice(c.coords());
        }
        let mut out = UPoly { stride, data };
        out.normalize();
        out
    }

    /// Coefficients given as integers reduced into F_p and embedded as
    /// constants of F_q. Handy for fixtures over prime fields.
    pub fn from_ints(fq: &Fq, ints: &[u64]) -> Self {
        let coeffs: Vec<FqElem> = ints.iter().map(|&c| fq.from_u64(c)).collect();
        Self::from_coeffs(fq, &coeffs)
    }

    pub(crate) fn from_raw(stride: usize, data: Vec<u64>) -> Self {
        let mut out = UPoly { stride, data };
        out.normalize();
        out
    }

    pub(crate) fn into_data(self) -> Vec<u64> {
        self.data
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn num_coeffs(&self) -> usize {
        self.data.len() / self.stride
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.num_coeffs() - 1)
        }
    }

    pub(crate) fn block(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn block_is_zero(&self, i: usize) -> bool {
        self.block(i).iter().all(|&c| c == 0)
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        if i < self.num_coeffs() {
            FqElem::from_raw(self.block(i).to_vec())
        } else {
            FqElem::from_raw(vec![0; self.stride])
        }
    }

    pub fn coeffs(&self) -> Vec<FqElem> {
        (0..self.num_coeffs()).map(|i| self.coeff(i)).collect()
    }

    /// Leading coefficient; zero element for the zero polynomial.
    pub fn lc(&self) -> FqElem {
        match self.degree() {
            Some(d) => self.coeff(d),
            None => FqElem::from_raw(vec![0; self.stride]),
        }
    }

    pub fn is_monic(&self, fq: &Fq) -> bool {
        self.lc() == fq.one()
    }

    fn normalize(&mut self) {
        while !self.data.is_empty() {
            let n = self.num_coeffs();
            if self.block_is_zero(n - 1) {
                self.data.truncate((n - 1) * self.stride);
            } else {
                break;
            }
        }
    }

    pub fn add(&self, other: &Self, fq: &Fq) -> Self {
        let p = fq.p();
        let (longer, shorter) = if self.data.len() >= other.data.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut data = longer.data.clone();
        pf_add_assign(p, &mut data[..shorter.data.len()], &shorter.data);
        Self::from_raw(self.stride, data)
    }

    pub fn sub(&self, other: &Self, fq: &Fq) -> Self {
        let p = fq.p();
        let n = self.data.len().max(other.data.len());
        let mut data = vec![0u64; n];
        data[..self.data.len()].copy_from_slice(&self.data);
        pf_sub_assign(p, &mut data[..other.data.len()], &other.data);
        Self::from_raw(self.stride, data)
    }

    pub fn neg(&self, fq: &Fq) -> Self {
        let mut data = self.data.clone();
        pf_neg(fq.p(), &mut data);
        Self::from_raw(self.stride, data)
    }

    pub fn mul(&self, other: &Self, fq: &Fq) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(fq);
        }
        let stride = self.stride;
        let (na, nb) = (self.num_coeffs(), other.num_coeffs());
        let mut data = vec![0u64; (na + nb - 1) * stride];
        if stride == 1 {
            let p = fq.p();
            for i in 0..na {
                let ai = self.data[i];
                if ai == 0 {
                    continue;
                }
                for j in 0..nb {
                    let bj = other.data[j];
                    if bj == 0 {
                        continue;
                    }
                    let slot = &mut data[i + j];
                    *slot = (*slot + ai * bj) % p;
                }
            }
        } else {
            let p = fq.p();
            let mut scratch = vec![0u64; 2 * stride - 1];
            for i in 0..na {
                if self.block_is_zero(i) {
                    continue;
                }
                for j in 0..nb {
                    if other.block_is_zero(j) {
                        continue;
                    }
                    let mut tmp = std::mem::take(&mut scratch);
                    tmp.clear();
                    tmp.resize(2 * stride - 1, 0);
                    pf_mul_acc(p, &mut tmp, self.block(i), other.block(j));
                    pf_rem(p, &mut tmp, fq.modulus_coeffs());
                    let out = &mut data[(i + j) * stride..(i + j + 1) * stride];
                    pf_add_assign(p, &mut out[..tmp.len()], &tmp);
                    scratch = tmp;
                }
            }
        }
        Self::from_raw(stride, data)
    }

    pub fn scale(&self, c: &FqElem, fq: &Fq) -> Self {
        self.mul(&Self::constant(fq, c.clone()), fq)
    }

    /// Division with remainder; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &Self, fq: &Fq) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = divisor.degree().unwrap();
        let lead_inv = fq.inv(&divisor.lc())?;
        let mut rem = self.clone();
        let mut quo_coeffs =
            vec![fq.zero(); self.num_coeffs().saturating_sub(divisor.num_coeffs()) + 1];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let c = fq.mul(&rem.lc(), &lead_inv);
            let shift = dr - dd;
            quo_coeffs[shift] = c.clone();
            let sub = divisor.mul(&Self::monomial(fq, shift, c), fq);
            rem = rem.sub(&sub, fq);
        }
        Ok((Self::from_coeffs(fq, &quo_coeffs), rem))
    }

    pub fn rem(&self, divisor: &Self, fq: &Fq) -> Result<Self> {
        Ok(self.divrem(divisor, fq)?.1)
    }

    pub fn exact_div(&self, divisor: &Self, fq: &Fq) -> Result<Self> {
        let (q, r) = self.divrem(divisor, fq)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Monic gcd. gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self, fq: &Fq) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, fq).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic(fq)
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*other = g.
    /// g carries whatever leading coefficient the remainder chain produced.
    pub fn xgcd(&self, other: &Self, fq: &Fq) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Self::one(fq);
        let mut s1 = Self::zero(fq);
        let mut t0 = Self::zero(fq);
        let mut t1 = Self::one(fq);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, fq).expect("divisor is nonzero");
            let s = s0.sub(&q.mul(&s1, fq), fq);
            let t = t0.sub(&q.mul(&t1, fq), fq);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        (r0, s0, t0)
    }

    pub fn monic(&self, fq: &Fq) -> Self {
        match self.degree() {
            None => self.clone(),
            Some(_) => {
                let inv = fq.inv(&self.lc()).expect("leading coefficient nonzero");
                self.scale(&inv, fq)
            }
        }
    }

    pub fn eval(&self, x: &FqElem, fq: &Fq) -> FqElem {
        let mut acc = fq.zero();
        for i in (0..self.num_coeffs()).rev() {
            acc = fq.mul(&acc, x);
            acc = fq.add(&acc, &self.coeff(i));
        }
        acc
    }

    /// Evaluate at a point of an extension field of F_q; coefficients embed
    /// as constants.
    pub fn eval_ext(&self, x: &ExtFieldElem, ctx: &FieldCtx) -> ExtFieldElem {
        let mut acc = ctx.zero();
        for i in (0..self.num_coeffs()).rev() {
            acc = ctx.mul(&acc, x);
            acc = ctx.add(&acc, &ctx.scalar(&self.coeff(i)));
        }
        acc
    }

    pub fn derivative(&self, fq: &Fq) -> Self {
        if self.num_coeffs() <= 1 {
            return Self::zero(fq);
        }
        let n = self.num_coeffs();
        let mut coeffs = Vec::with_capacity(n - 1);
        for i in 1..n {
            let k = fq.from_u64(i as u64);
            coeffs.push(fq.mul(&self.coeff(i), &k));
        }
        Self::from_coeffs(fq, &coeffs)
    }

    /// Small-exponent power by repeated squaring.
    pub fn pow(&self, mut exp: u64, fq: &Fq) -> Self {
        let mut acc = Self::one(fq);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, fq);
            }
            if exp > 1 {
                base = base.mul(&base, fq);
            }
            exp >>= 1;
        }
        acc
    }

    /// f(t)^(p^j), computed positionally: coefficients are raised to the
    /// p^j-th power and exponents multiplied by p^j.
    pub fn pow_p_jump(&self, j: usize, fq: &Fq) -> Self {
        if self.is_zero() || j == 0 {
            if j == 0 {
                return self.clone();
            }
            return Self::zero(fq);
        }
        let spacing = (fq.p() as u128).pow(j as u32);
        assert!(
            spacing <= (1 << 40),
            "p^j jump too large: p^{j} = {spacing}"
        );
        let spacing = spacing as usize;
        let n = self.num_coeffs();
        let stride = self.stride;
        let mut data = vec![0u64; ((n - 1) * spacing + 1) * stride];
        for i in 0..n {
            if self.block_is_zero(i) {
                continue;
            }
            let c = if fq.e() == 1 {
                self.coeff(i)
            } else {
                fq.pow_p(&self.coeff(i), j)
            };
            data[i * spacing * stride..(i * spacing + 1) * stride].copy_from_slice(c.coords());
        }
        Self::from_raw(stride, data)
    }

    /// f(t)^(q^k).
    pub fn pow_q_jump(&self, k: usize, fq: &Fq) -> Self {
        self.pow_p_jump(k * fq.e(), fq)
    }

    /// f(t)^(q^k - 1) for k >= 1, via the telescoping product of q-power
    /// jumps of f^(q-1); every factor is sparse.
    pub fn pow_q_minus_one(&self, k: usize, fq: &Fq) -> Self {
        let base = self.pow(fq.order() - 1, fq);
        let mut acc = UPoly::one(fq);
        for j in 0..k {
            acc = acc.mul(&base.pow_q_jump(j, fq), fq);
        }
        acc
    }

    pub fn display<'a>(&'a self, var: &'a str) -> DisplayUPoly<'a> {
        DisplayUPoly { poly: self, var }
    }
}

pub struct DisplayUPoly<'a> {
    poly: &'a UPoly,
    var: &'a str,
}

impl fmt::Display for DisplayUPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.poly.num_coeffs()).rev() {
            let c = self.poly.coeff(i);
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let is_one = c.coords()[0] == 1 && c.coords()[1..].iter().all(|&x| x == 0);
            match i {
                0 => write!(f, "{c}")?,
                1 => {
                    if !is_one {
                        write!(f, "{c}*")?;
                    }
                    write!(f, "{}", self.var)?;
                }
                _ => {
                    if !is_one {
                        write!(f, "{c}*")?;
                    }
                    write!(f, "{}^{}", self.var, i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Canonical list form: coefficients low-degree first.
        write!(f, "[")?;
        for i in 0..self.num_coeffs() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.coeff(i))?;
        }
        write!(f, "]")
    }
}
