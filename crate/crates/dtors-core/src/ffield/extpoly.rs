//! Dense univariate polynomials with coefficients in an extension field
//! F_{q^N}. These arise as specializations t -> tau of F_q[t][z] polynomials
//! and carry the root-counting machinery used to audit specializations.

use crate::error::{Error, Result};
use crate::ffield::{ExtFieldElem, FieldCtx};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtPoly {
    coeffs: Vec<ExtFieldElem>,
}

impl ExtPoly {
    pub fn zero() -> Self {
        ExtPoly { coeffs: Vec::new() }
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        ExtPoly {
            coeffs: vec![ctx.one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<ExtFieldElem>) -> Self {
        let mut out = ExtPoly { coeffs };
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

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize, ctx: &FieldCtx) -> ExtFieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn coeffs(&self) -> &[ExtFieldElem] {
        &self.coeffs
    }

    pub fn lc(&self) -> Option<&ExtFieldElem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(ctx.add(&self.coeff(i, ctx), &other.coeff(i, ctx)));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(ctx.sub(&self.coeff(i, ctx), &other.coeff(i, ctx)));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self, ctx: &FieldCtx) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = ctx.add(&coeffs[i + j], &ctx.mul(a, b));
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &ExtFieldElem, ctx: &FieldCtx) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| ctx.mul(x, c)).collect())
    }

    pub fn divrem(&self, divisor: &Self, ctx: &FieldCtx) -> Result<(Self, Self)> {
        let dl = divisor.lc().ok_or(Error::DivisionByZero)?;
        let dd = divisor.degree().unwrap();
        let lead_inv = ctx.inv(dl)?;
        let mut rem = self.clone();
        let mut quo = vec![ctx.zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let c = ctx.mul(rem.lc().unwrap(), &lead_inv);
            let shift = dr - dd;
            quo[shift] = c.clone();
            let mut sub = vec![ctx.zero(); shift];
            sub.extend(divisor.coeffs.iter().map(|x| ctx.mul(x, &c)));
            rem = rem.sub(&Self::from_coeffs(sub), ctx);
        }
        Ok((Self::from_coeffs(quo), rem))
    }

    pub fn gcd(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b, ctx).expect("divisor nonzero");
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(lc) => {
                let inv = ctx.inv(lc).expect("leading coefficient nonzero");
                self.scale(&inv, ctx)
            }
        }
    }

    pub fn eval(&self, x: &ExtFieldElem, ctx: &FieldCtx) -> ExtFieldElem {
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = ctx.mul(&acc, x);
            acc = ctx.add(&acc, c);
        }
        acc
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let k = ctx.scalar(&ctx.base().from_u64(i as u64));
            coeffs.push(ctx.mul(c, &k));
        }
        Self::from_coeffs(coeffs)
    }

    /// For f with vanishing derivative, f(x) = g(x^p); returns g.
    fn unp_power(&self, ctx: &FieldCtx) -> Self {
        let p = ctx.base().p() as usize;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                coeffs.push(c.clone());
            } else {
                debug_assert!(c.is_zero(), "derivative was nonzero");
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Number of distinct roots in an algebraic closure.
    ///
    /// Recursion: strip p-th-power exponent patterns (Frobenius is a
    /// bijection on the closure, so f(x) = g(x^p) has as many roots as g),
    /// and split f = (f/d) * d along d = gcd(f, f') with inclusion-exclusion
    /// on the root sets.
    pub fn distinct_root_count(&self, ctx: &FieldCtx) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.drc(ctx))
    }

    fn drc(&self, ctx: &FieldCtx) -> usize {
        let deg = self.degree().expect("nonzero");
        if deg == 0 {
            return 0;
        }
        let deriv = self.derivative(ctx);
        if deriv.is_zero() {
            return self.unp_power(ctx).drc(ctx);
        }
        let d = self.gcd(&deriv, ctx);
        if d.degree() == Some(0) {
            return deg;
        }
        let (u, r) = self.divrem(&d, ctx).expect("gcd divides");
        debug_assert!(r.is_zero());
        let overlap = u.gcd(&d, ctx);
        u.drc(ctx) + d.drc(ctx) - overlap.drc(ctx)
    }
}
