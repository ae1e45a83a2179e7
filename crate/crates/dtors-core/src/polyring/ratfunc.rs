//! Rational functions a1/a2 over F_q[t], kept in lowest terms with a monic
//! denominator.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{ExtFieldElem, FieldCtx, Fq};
use crate::polyring::upoly::UPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly, fq: &Fq) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = num;
        let mut den = den;
        let g = num.gcd(&den, fq);
        if g.degree().map_or(false, |d| d > 0) {
            num = num.exact_div(&g, fq)?;
            den = den.exact_div(&g, fq)?;
        }
        let lead_inv = fq.inv(&den.lc())?;
        num = num.scale(&lead_inv, fq);
        den = den.scale(&lead_inv, fq);
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(num: UPoly, fq: &Fq) -> RatFunc {
        RatFunc {
            num,
            den: UPoly::one(fq),
        }
    }

    pub fn zero(fq: &Fq) -> RatFunc {
        Self::from_poly(UPoly::zero(fq), fq)
    }

    pub fn one(fq: &Fq) -> RatFunc {
        Self::from_poly(UPoly::one(fq), fq)
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// max(deg num, deg den); the degree of the rational function.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn add(&self, other: &Self, fq: &Fq) -> Self {
        let num = self
            .num
            .mul(&other.den, fq)
            .add(&other.num.mul(&self.den, fq), fq);
        let den = self.den.mul(&other.den, fq);
        Self::new(num, den, fq).expect("denominator nonzero")
    }

    pub fn sub(&self, other: &Self, fq: &Fq) -> Self {
        let num = self
            .num
            .mul(&other.den, fq)
            .sub(&other.num.mul(&self.den, fq), fq);
        let den = self.den.mul(&other.den, fq);
        Self::new(num, den, fq).expect("denominator nonzero")
    }

    pub fn mul(&self, other: &Self, fq: &Fq) -> Self {
        Self::new(
            self.num.mul(&other.num, fq),
            self.den.mul(&other.den, fq),
            fq,
        )
        .expect("denominator nonzero")
    }

    pub fn div(&self, other: &Self, fq: &Fq) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(
            self.num.mul(&other.den, fq),
            self.den.mul(&other.num, fq),
            fq,
        )
    }

    pub fn neg(&self, fq: &Fq) -> Self {
        RatFunc {
            num: self.num.neg(fq),
            den: self.den.clone(),
        }
    }

    /// Value at tau, defined when the denominator does not vanish there.
    pub fn eval_ext(&self, tau: &ExtFieldElem, ctx: &FieldCtx) -> Result<ExtFieldElem> {
        let d = self.den.eval_ext(tau, ctx);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.num.eval_ext(tau, ctx);
        Ok(ctx.mul(&n, &ctx.inv(&d)?))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Whether a and b span a 2-dimensional F_q-space inside F_q(t), i.e. the
/// cross products a1*b2 and b1*a2 are not proportional over F_q. Dependent
/// points share every torsion order, which degenerates two-point sweeps.
pub fn fq_linearly_independent(a: &RatFunc, b: &RatFunc, fq: &Fq) -> bool {
    let u = a.num.mul(&b.den, fq);
    let v = b.num.mul(&a.den, fq);
    if u.is_zero() || v.is_zero() {
        // a zero point lies in every F_q-span
        return false;
    }
    if u.degree() != v.degree() {
        return true;
    }
    // proportional iff u - (lc_u/lc_v) v = 0
    let scale = fq.mul(&u.lc(), &fq.inv(&v.lc()).expect("nonzero"));
    !u.sub(&v.scale(&scale, fq), fq).is_zero()
}
