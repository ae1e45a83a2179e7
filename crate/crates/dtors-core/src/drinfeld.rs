//! The module action Phi_T(x) = tau*x + lambda*x^q + x^(q^r) over a finite
//! field, its Ore-operator form, torsion orders, and the one-parameter
//! family Phi^(z)_T(x) = t*x + z*x^q + x^(q^r) over F_q(t) whose action on a
//! marked point produces denominator-cleared polynomials in F_q[t][z].

use crate::error::{Error, Result};
use crate::ffield::{ExtFieldElem, FieldCtx, Fq, FqElem};
use crate::linalg::DependenceFinder;
use crate::polyring::bipoly::BiPoly;
use crate::polyring::ratfunc::RatFunc;
use crate::polyring::upoly::UPoly;

/// Parameters (r, tau, lambda) of one member of the family, with tau and
/// lambda living in a common extension field.
#[derive(Clone, Debug)]
pub struct DrinfeldParams {
    r: usize,
    tau: ExtFieldElem,
    lambda: ExtFieldElem,
}

impl DrinfeldParams {
    pub fn new(
        r: usize,
        tau: ExtFieldElem,
        lambda: ExtFieldElem,
        ctx: &FieldCtx,
    ) -> Result<DrinfeldParams> {
        if r < 2 {
            return Err(Error::InvalidParams("r must be at least 2".into()));
        }
        ctx.try_check(&tau)?;
        ctx.try_check(&lambda)?;
        Ok(DrinfeldParams { r, tau, lambda })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn tau(&self) -> &ExtFieldElem {
        &self.tau
    }

    pub fn lambda(&self) -> &ExtFieldElem {
        &self.lambda
    }

    /// Phi_T(c) = tau*c + lambda*c^q + c^(q^r).
    pub fn apply_t(&self, c: &ExtFieldElem, ctx: &FieldCtx) -> ExtFieldElem {
        let mut acc = ctx.mul(&self.tau, c);
        acc = ctx.add(&acc, &ctx.mul(&self.lambda, &ctx.frobenius(c, 1)));
        ctx.add(&acc, &ctx.frobenius(c, self.r))
    }

    /// Phi_P(c) for P in F_q[T], as sum p_i Phi_T^(i)(c) over cached
    /// iterates.
    pub fn apply(&self, op: &UPoly, c: &ExtFieldElem, ctx: &FieldCtx) -> Result<ExtFieldElem> {
        ctx.try_check(c)?;
        let mut acc = ctx.zero();
        let mut iterate = c.clone();
        for i in 0..op.num_coeffs() {
            let p_i = op.coeff(i);
            if !p_i.is_zero() {
                acc = ctx.add(&acc, &ctx.mul(&ctx.scalar(&p_i), &iterate));
            }
            if i + 1 < op.num_coeffs() {
                iterate = self.apply_t(&iterate, ctx);
            }
        }
        Ok(acc)
    }

    /// Phi_T as an additive operator: coefficients [tau, lambda, 0, .., 1].
    pub fn t_operator(&self, ctx: &FieldCtx) -> AdditivePoly {
        let mut coeffs = vec![ctx.zero(); self.r + 1];
        coeffs[0] = self.tau.clone();
        coeffs[1] = self.lambda.clone();
        coeffs[self.r] = ctx.add(&coeffs[self.r], &ctx.one());
        AdditivePoly::from_coeffs(coeffs)
    }

    /// Phi_P as an additive operator, built by Ore composition. Evaluating
    /// the result agrees with [`DrinfeldParams::apply`] everywhere.
    pub fn operator_poly(&self, op: &UPoly, ctx: &FieldCtx) -> AdditivePoly {
        let phi_t = self.t_operator(ctx);
        let mut acc = AdditivePoly::zero();
        let mut power = AdditivePoly::identity(ctx);
        for i in 0..op.num_coeffs() {
            let p_i = op.coeff(i);
            if !p_i.is_zero() {
                acc = acc.add(&power.scale(&ctx.scalar(&p_i), ctx), ctx);
            }
            if i + 1 < op.num_coeffs() {
                power = phi_t.compose(&power, ctx);
            }
        }
        acc
    }

    /// The monic polynomial of least degree annihilating c.
    ///
    /// Iterates c, Phi_T(c), Phi_{T^2}(c), ... are F_q-vectors in a space of
    /// dimension N, so the first linear dependence appears by step N and its
    /// coefficients are the order's coefficients. The zero point has order 1.
    pub fn torsion_order(&self, c: &ExtFieldElem, ctx: &FieldCtx) -> UPoly {
        let fq = ctx.base();
        if c.is_zero() {
            return UPoly::one(fq);
        }
        let mut finder = DependenceFinder::new(fq, ctx.degree());
        let mut iterate = c.clone();
        loop {
            if let Some(combo) = finder.push(iterate.coords(ctx)) {
                let mut coeffs: Vec<FqElem> = combo.iter().map(|g| fq.neg(g)).collect();
                coeffs.push(fq.one());
                return UPoly::from_coeffs(fq, &coeffs);
            }
            iterate = self.apply_t(&iterate, ctx);
        }
    }
}

/// An additive (F_q-linear) polynomial: coefficient i multiplies x^(q^i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdditivePoly {
    coeffs: Vec<ExtFieldElem>,
}

impl AdditivePoly {
    pub fn zero() -> Self {
        AdditivePoly { coeffs: Vec::new() }
    }

    /// The identity map x.
    pub fn identity(ctx: &FieldCtx) -> Self {
        AdditivePoly {
            coeffs: vec![ctx.one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<ExtFieldElem>) -> Self {
        let mut out = AdditivePoly { coeffs };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[ExtFieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest i with a nonzero x^(q^i) coefficient.
    pub fn q_degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, c: &ExtFieldElem, ctx: &FieldCtx) -> ExtFieldElem {
        let mut acc = ctx.zero();
        let mut frob = c.clone();
        for (i, coeff) in self.coeffs.iter().enumerate() {
            if !coeff.is_zero() {
                acc = ctx.add(&acc, &ctx.mul(coeff, &frob));
            }
            if i + 1 < self.coeffs.len() {
                frob = ctx.frobenius(&frob, 1);
            }
        }
        acc
    }

    pub fn add(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero());
            coeffs.push(ctx.add(&a, &b));
        }
        Self::from_coeffs(coeffs)
    }

    /// Ore composition self(other(x)): coefficient c at level i composed
    /// past level j picks up a Frobenius twist, c * d^(q^i) at level i + j.
    pub fn compose(&self, other: &Self, ctx: &FieldCtx) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![ctx.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, d) in other.coeffs.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let twisted = ctx.frobenius(d, i);
                coeffs[i + j] = ctx.add(&coeffs[i + j], &ctx.mul(c, &twisted));
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Left-multiply every coefficient (composition with the scalar map).
    pub fn scale(&self, c: &ExtFieldElem, ctx: &FieldCtx) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| ctx.mul(c, x)).collect())
    }
}

/// The family Phi^(z)_T(x) = t*x + z*x^q + x^(q^r) together with a marked
/// point a = a1/a2 in F_q(t).
#[derive(Clone, Debug)]
pub struct GenericFamily {
    r: usize,
    point: RatFunc,
}

/// Default ceiling on the z-degree of product polynomials; they grow doubly
/// exponentially in the order bound M.
pub const DEFAULT_DEGREE_CAP: u128 = 10_000;

impl GenericFamily {
    pub fn new(r: usize, point: RatFunc) -> Result<GenericFamily> {
        if r < 2 {
            return Err(Error::InvalidParams("r must be at least 2".into()));
        }
        if point.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(GenericFamily { r, point })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn point(&self) -> &RatFunc {
        &self.point
    }

    /// The denominator-cleared action polynomial
    /// a2^(q^(r*deg P)) * Phi^(z)_P(a) in F_q[t][z].
    ///
    /// Built from the cleared recursion
    ///   g_{n+1} = g_n^(q^r) + A_n * z * g_n^q + t * B_n * g_n,
    ///   A_n = a2^(q^(r(n+1)) - q^(rn+1)),  B_n = a2^(q^(r(n+1)) - q^(rn)),
    /// starting at g_1 = a1^q a2^(q^r - q) z + t a1 a2^(q^r - 1) + a1^(q^r),
    /// then combined as sum p_i a2^(q^(r deg P) - q^(ri)) g_i. Exponents are
    /// only ever realized as q-power stretches of two small base powers, so
    /// every factor stays sparse.
    ///
    /// The z-degree is exactly q^(r(deg P - 1)).
    pub fn action_poly(&self, op: &UPoly, fq: &Fq) -> Result<BiPoly> {
        let m = match op.degree() {
            None | Some(0) => return Err(Error::ConstantOperator),
            Some(m) => m,
        };
        let r = self.r;
        let a1 = self.point.num();
        let a2 = self.point.den();

        // a2^(q^(r-1) - 1) and a2^(q^r - 1): the only genuine powers needed.
        let base_rm1 = a2.pow_q_minus_one(r - 1, fq);
        let base_r = a2.pow_q_minus_one(r, fq);

        let t = UPoly::var(fq);
        let g1 = {
            // a1^q * a2^(q^r - q) = (a1 * a2^(q^(r-1)-1))^q
            let zc = a1.mul(&base_rm1, fq).pow_q_jump(1, fq);
            let c0 = t
                .mul(&a1.mul(&base_r, fq), fq)
                .add(&a1.pow_q_jump(r, fq), fq);
            BiPoly::from_z_coeffs(vec![c0, zc])
        };

        let mut iterates = vec![BiPoly::constant(a1.clone()), g1];
        for n in 1..m {
            let g_n = &iterates[n];
            let lead = g_n.pow_q_jump(r, fq);
            let a_n = base_rm1.pow_q_jump(r * n + 1, fq);
            let mid = g_n.pow_q_jump(1, fq).mul_monomial(1, &a_n, fq);
            let b_n = base_r.pow_q_jump(r * n, fq);
            let low = g_n.scale_upoly(&b_n.mul(&t, fq), fq);
            iterates.push(lead.add(&mid, fq).add(&low, fq));
        }

        // sum p_i * a2^(q^(rm) - q^(ri)) * g_i, accumulating the telescoping
        // scale factor from the top degree down.
        let mut result = BiPoly::zero();
        let mut scale = UPoly::one(fq);
        for i in (0..=m).rev() {
            let p_i = op.coeff(i);
            if !p_i.is_zero() {
                result = result.add(&iterates[i].scale_upoly(&scale, fq).scale_fq(&p_i, fq), fq);
            }
            if i > 0 {
                scale = scale.mul(&base_r.pow_q_jump(r * (i - 1), fq), fq);
            }
        }
        Ok(result)
    }

    /// Predicted z-degree of [`GenericFamily::order_bound_product`]:
    /// sum over s = 1..=M of q^s * q^(r(s-1)).
    pub fn predicted_product_degree(q: u64, r: usize, m: usize) -> u128 {
        (1..=m)
            .map(|s| (q as u128).pow(s as u32) * (q as u128).pow((r * (s - 1)) as u32))
            .sum()
    }

    /// Product of the action polynomials over every monic operator of
    /// degree 1..=M, in degree-then-counting order. Its specializations
    /// vanish at z = lambda exactly when the marked point's order under
    /// (tau, lambda) has degree at most M.
    ///
    /// Refuses M whose predicted degree exceeds `cap` (sizes grow doubly
    /// exponentially in M).
    pub fn order_bound_product(&self, m: usize, cap: u128, fq: &Fq) -> Result<BiPoly> {
        if m == 0 {
            return Err(Error::InvalidParams("order bound M must be >= 1".into()));
        }
        let predicted = Self::predicted_product_degree(fq.order(), self.r, m);
        if predicted > cap {
            return Err(Error::SizeCapExceeded {
                predicted,
                cap,
            });
        }
        let mut acc = BiPoly::one(fq);
        for s in 1..=m {
            for op in monic_operators(fq, s) {
                acc = acc.mul(&self.action_poly(&op, fq)?, fq);
            }
        }
        Ok(acc)
    }
}

/// Whether `value <= base^exp`, robust against overflow: the bounds in the
/// height laws are towers far beyond machine range, so any representable
/// value passes once base^exp clears u128.
pub fn leq_power(value: u128, base: u128, exp: u32) -> bool {
    if base == 0 {
        return value == 0 || exp == 0 && value <= 1;
    }
    if base == 1 {
        return value <= 1;
    }
    let bits = 128 - base.leading_zeros();
    if (exp as u64) * (bits as u64) >= 128 {
        return true;
    }
    match base.checked_pow(exp) {
        Some(b) => value <= b,
        None => true,
    }
}

/// All monic operator polynomials of the given degree, in counting order of
/// their non-leading coefficient string.
pub fn monic_operators(fq: &Fq, degree: usize) -> impl Iterator<Item = UPoly> + '_ {
    let q = fq.order();
    let total = q.pow(degree as u32);
    (0..total).map(move |idx| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut rest = idx;
        for _ in 0..degree {
            coeffs.push(fq.elem_from_index(rest % q));
            rest /= q;
        }
        coeffs.push(fq.one());
        UPoly::from_coeffs(fq, &coeffs)
    })
}
