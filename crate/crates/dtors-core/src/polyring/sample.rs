//! Seeded random polynomial generators for experiments and statistics.
//! Everything draws from a caller-supplied RNG so runs stay reproducible.

use rand::Rng;

use crate::ffield::{Fq, FqElem};
use crate::polyring::bipoly::BiPoly;
use crate::polyring::ratfunc::RatFunc;
use crate::polyring::upoly::UPoly;

pub fn fq_elem<R: Rng>(rng: &mut R, fq: &Fq) -> FqElem {
    fq.elem_from_index(rng.gen_range(0..fq.order()))
}

/// Uniform polynomial of degree at most `max_deg` (possibly zero).
pub fn upoly<R: Rng>(rng: &mut R, fq: &Fq, max_deg: usize) -> UPoly {
    let coeffs: Vec<FqElem> = (0..=max_deg).map(|_| fq_elem(rng, fq)).collect();
    UPoly::from_coeffs(fq, &coeffs)
}

/// Uniform nonzero polynomial of degree at most `max_deg`.
pub fn nonzero_upoly<R: Rng>(rng: &mut R, fq: &Fq, max_deg: usize) -> UPoly {
    loop {
        let f = upoly(rng, fq, max_deg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Polynomial of exact degree `deg`.
pub fn upoly_exact<R: Rng>(rng: &mut R, fq: &Fq, deg: usize) -> UPoly {
    let mut coeffs: Vec<FqElem> = (0..deg).map(|_| fq_elem(rng, fq)).collect();
    let mut lead = fq_elem(rng, fq);
    while lead.is_zero() {
        lead = fq_elem(rng, fq);
    }
    coeffs.push(lead);
    UPoly::from_coeffs(fq, &coeffs)
}

/// Bivariate polynomial of exact z-degree `deg_z` and height at most
/// `height`.
pub fn bipoly<R: Rng>(rng: &mut R, fq: &Fq, deg_z: usize, height: usize) -> BiPoly {
    let mut coeffs: Vec<UPoly> = (0..deg_z).map(|_| upoly(rng, fq, height)).collect();
    let mut lead = upoly(rng, fq, height);
    while lead.is_zero() {
        lead = upoly(rng, fq, height);
    }
    coeffs.push(lead);
    BiPoly::from_z_coeffs(coeffs)
}

/// Nonzero rational function with numerator and denominator degrees at most
/// `max_deg`.
pub fn ratfunc<R: Rng>(rng: &mut R, fq: &Fq, max_deg: usize) -> RatFunc {
    loop {
        let num = upoly(rng, fq, max_deg);
        if num.is_zero() {
            continue;
        }
        let den = nonzero_upoly(rng, fq, max_deg);
        return RatFunc::new(num, den, fq).expect("denominator nonzero");
    }
}
