//! Certificates that protect common-zero counts under specialization.
//!
//! Given f_1..f_s in F_q[t][z] whose system has N distinct common zeros over
//! the closure of F_q(t), [`certificate`] produces a nonzero polynomial in
//! F_q[t] such that every specialization t -> tau avoiding its roots leaves
//! at most N distinct common zeros. The crucial factor Delta lands in the
//! ideal generated by a coprime pair extracted from the reduced system, so a
//! surviving common zero would force Delta(tau) = 0.

use crate::error::{Error, Result};
use crate::ffield::{ExtFieldElem, ExtPoly, FieldCtx, Fq, FqElem};
use crate::polyring::bezout::{bezout_cofactors, random_combine, SampleSet};
use crate::polyring::bipoly::{gcd_primitive, resultant, BiPoly};
use crate::polyring::upoly::UPoly;

/// The individual factors whose product is the certificate.
#[derive(Clone, Debug)]
pub struct CertFactors {
    /// The ideal-membership factor (resultant of the reduced pair, or the
    /// elimination denominator, or a coprime-content gcd in degenerate
    /// shapes).
    pub delta: UPoly,
    /// Coefficient gcd of the common divisor h; identically 1 because h is
    /// kept primitive, recorded for the factor accounting.
    pub content_h: UPoly,
    /// Leading z-coefficient of h: keeps deg h stable under specialization.
    pub lc_h: UPoly,
    /// Resultant of the maximal separable squarefree divisor of h with its
    /// derivative: keeps the distinct-root structure of h stable.
    pub disc_sf_h: UPoly,
}

/// A specialization certificate for one polynomial system.
#[derive(Clone, Debug)]
pub struct SpecializationCertificate {
    /// Product of all four factors.
    pub cert: UPoly,
    /// The bare product delta * content_h.
    pub paper_cert: UPoly,
    pub factors: CertFactors,
    /// Greatest primitive common divisor of the system.
    pub common_divisor: BiPoly,
    /// Distinct common zeros of the system over the closure of F_q(t).
    pub generic_count: usize,
    /// Max z-degree D of the nonzero inputs.
    pub deg_z_max: usize,
    /// Max height H of the nonzero inputs.
    pub height_max: usize,
    /// (2D+1)H.
    pub paper_bound: usize,
    /// (4D+2)H.
    pub guarded_bound: usize,
    pub seed: u64,
    /// The random-combination draw that produced the coprime pair.
    pub alphas: Vec<FqElem>,
    /// Draws discarded before a non-degrading combination appeared.
    pub retries: u32,
    /// Whether the construction fell back to cofactor elimination.
    pub used_elimination: bool,
}

/// Greatest primitive common divisor of the system and its distinct-root
/// count over the closure of F_q(t).
pub fn generic_common_zeros(fs: &[BiPoly], fq: &Fq) -> Result<(BiPoly, usize)> {
    let nonzero: Vec<&BiPoly> = fs.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZeroSystem);
    }
    let mut h = nonzero[0].clone();
    for f in &nonzero[1..] {
        h = gcd_primitive(&h, f, fq);
        if h.deg_z() == Some(0) {
            break;
        }
    }
    // normalize the representative: primitive, leading z-coefficient monic;
    // z-constants are units of F_q(t)[z] and collapse to 1
    let h = gcd_primitive(&h, &BiPoly::zero(), fq);
    let count = if h.deg_z() == Some(0) {
        0
    } else {
        h.distinct_root_count(fq)?
    };
    Ok((h, count))
}

const MAX_DRAWS: u32 = 8;

/// Build a certificate for the system, seeding every random choice.
pub fn certificate(fs: &[BiPoly], fq: &Fq, seed: u64) -> Result<SpecializationCertificate> {
    let (h, generic_count) = generic_common_zeros(fs, fq)?;
    let nonzero: Vec<&BiPoly> = fs.iter().filter(|f| !f.is_zero()).collect();

    let deg_z_max = nonzero.iter().map(|f| f.deg_z().unwrap()).max().unwrap();
    let height_max = nonzero.iter().map(|f| f.height().unwrap()).max().unwrap();

    let reduced: Vec<BiPoly> = nonzero
        .iter()
        .map(|f| f.exact_div(&h, fq))
        .collect::<Result<Vec<_>>>()?;

    let mut alphas: Vec<FqElem> = Vec::new();
    let mut retries = 0u32;
    let mut used_elimination = false;

    let delta = if reduced.len() == 1 {
        // c_1 f_1 = Delta h with c_1 = 1: Delta is the z-constant cofactor.
        let g = &reduced[0];
        debug_assert_eq!(g.deg_z(), Some(0));
        g.coeff_z(0, fq).monic(fq)
    } else {
        let mut found: Option<UPoly> = None;
        let mut seeds = Vec::new();
        for attempt in 0..MAX_DRAWS {
            let draw_seed = seed.wrapping_add(attempt as u64);
            seeds.push(draw_seed);
            let combo = random_combine(&reduced, fq, SampleSet { ext_degree: 1 }, draw_seed)?;
            let f0 = combo.f0;
            if f0.is_zero() {
                retries += 1;
                continue;
            }
            let pair_gcd = gcd_primitive(&reduced[0], &f0, fq);
            if pair_gcd.deg_z() != Some(0) {
                retries += 1;
                continue;
            }
            alphas = combo.alphas;
            found = Some(pair_delta(&reduced[0], &f0, fq)?);
            break;
        }
        match found {
            Some(d) => d,
            None => {
                // Every draw over F_q degraded the pair; fall back to the
                // deterministic cofactor elimination on the full system.
                used_elimination = true;
                let cof = bezout_cofactors(&reduced, fq).map_err(|e| match e {
                    Error::NotCoprime { .. } => Error::RetryExhausted {
                        attempts: MAX_DRAWS as usize,
                        seeds: seeds.clone(),
                    },
                    other => other,
                })?;
                cof.denom
            }
        }
    };
    debug_assert!(!delta.is_zero());

    let content_h = if h.deg_z() == Some(0) {
        UPoly::one(fq)
    } else {
        h.content(fq)
    };
    let lc_h = h.lc_z().cloned().unwrap_or_else(|| UPoly::one(fq));
    let sep = h.separable_part(fq)?;
    let disc_sf_h = if sep.deg_z().map_or(true, |d| d == 0) {
        UPoly::one(fq)
    } else {
        resultant(&sep, &sep.z_derivative(fq), fq)?
    };
    debug_assert!(!disc_sf_h.is_zero());

    let paper_cert = delta.mul(&content_h, fq);
    let cert = paper_cert.mul(&lc_h, fq).mul(&disc_sf_h, fq);

    let paper_bound = (2 * deg_z_max + 1) * height_max;
    let guarded_bound = (4 * deg_z_max + 2) * height_max;
    debug_assert!(cert.degree().unwrap() <= guarded_bound);

    Ok(SpecializationCertificate {
        cert,
        paper_cert,
        factors: CertFactors {
            delta,
            content_h,
            lc_h,
            disc_sf_h,
        },
        common_divisor: h,
        generic_count,
        deg_z_max,
        height_max,
        paper_bound,
        guarded_bound,
        seed,
        alphas,
        retries,
        used_elimination,
    })
}

/// Delta for a coprime pair: the z-resultant when possible, the coefficient
/// gcd when both members are constant in z.
fn pair_delta(g1: &BiPoly, g0: &BiPoly, fq: &Fq) -> Result<UPoly> {
    let d1 = g1.deg_z().ok_or(Error::ZeroPolynomial)?;
    let d0 = g0.deg_z().ok_or(Error::ZeroPolynomial)?;
    if d1 == 0 && d0 == 0 {
        let c1 = g1.coeff_z(0, fq);
        let c0 = g0.coeff_z(0, fq);
        return Ok(c1.gcd(&c0, fq));
    }
    resultant(g1, g0, fq)
}

/// Outcome of checking one specialization against a certificate polynomial.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    /// cert(tau) = 0: the specialization is excluded, not judged.
    pub excluded: bool,
    /// gcd of the specialized system in F_{q^N}[x].
    pub specialized_gcd: ExtPoly,
    /// Distinct common zeros of the specialized system; None when every
    /// member specializes to the zero polynomial.
    pub distinct_common_zeros: Option<usize>,
    pub generic_count: usize,
    /// excluded, or the count does not exceed the generic count.
    pub pass: bool,
}

/// Check one specialization t -> tau against the guarded certificate.
pub fn verify_at(
    fs: &[BiPoly],
    cert: &SpecializationCertificate,
    tau: &ExtFieldElem,
    ctx: &FieldCtx,
) -> VerifyReport {
    verify_at_with(fs, &cert.cert, cert.generic_count, tau, ctx)
}

/// Check one specialization against an arbitrary certificate polynomial
/// (used to compare the bare and guarded factor sets).
pub fn verify_at_with(
    fs: &[BiPoly],
    cert_poly: &UPoly,
    generic_count: usize,
    tau: &ExtFieldElem,
    ctx: &FieldCtx,
) -> VerifyReport {
    let excluded = cert_poly.eval_ext(tau, ctx).is_zero();
    let mut gcd = ExtPoly::zero();
    for f in fs {
        if f.is_zero() {
            continue;
        }
        let spec = f.specialize(tau, ctx);
        gcd = gcd.gcd(&spec, ctx);
        if gcd.degree() == Some(0) {
            break;
        }
    }
    let (count, pass) = if gcd.is_zero() {
        // every polynomial vanished identically: infinitely many common zeros
        (None, excluded)
    } else {
        let n = gcd
            .distinct_root_count(ctx)
            .expect("specialized gcd is nonzero");
        (Some(n), excluded || n <= generic_count)
    };
    VerifyReport {
        excluded,
        specialized_gcd: gcd,
        distinct_common_zeros: count,
        generic_count,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    fn x(fq: &Fq) -> BiPoly {
        BiPoly::z_var(fq)
    }

    fn x_minus_t(fq: &Fq) -> BiPoly {
        BiPoly::from_z_coeffs(vec![UPoly::var(fq).neg(fq), UPoly::one(fq)])
    }

    #[test]
    fn common_zero_examples() {
        let fq = f2();
        let xt = x_minus_t(&fq);
        let (h, n) = generic_common_zeros(&[xt.clone(), xt.clone()], &fq).unwrap();
        assert_eq!(h, xt);
        assert_eq!(n, 1);

        let x_plus_t = BiPoly::from_z_coeffs(vec![UPoly::var(&fq), UPoly::one(&fq)]);
        let (h, n) = generic_common_zeros(&[x(&fq), x_plus_t], &fq).unwrap();
        assert_eq!(h, BiPoly::one(&fq));
        assert_eq!(n, 0);

        // ((x+t)^2, (x+t)(x+1)): gcd x+t, one common zero
        let sq = xt.mul(&xt, &fq);
        let other = xt.mul(
            &BiPoly::from_z_coeffs(vec![UPoly::one(&fq), UPoly::one(&fq)]),
            &fq,
        );
        let (h, n) = generic_common_zeros(&[sq, other], &fq).unwrap();
        assert_eq!(h, xt);
        assert_eq!(n, 1);

        assert!(matches!(
            generic_common_zeros(&[BiPoly::zero()], &fq),
            Err(Error::AllZeroSystem)
        ));
    }

    #[test]
    fn certificate_for_identical_inputs_is_one() {
        let fq = f2();
        let xt = x_minus_t(&fq);
        let cert = certificate(&[xt.clone(), xt.clone()], &fq, 1).unwrap();
        assert_eq!(cert.cert, UPoly::one(&fq));
        assert_eq!(cert.generic_count, 1);
        assert_eq!(cert.factors.delta, UPoly::one(&fq));
        assert_eq!(cert.factors.disc_sf_h, UPoly::one(&fq));
        assert_eq!(cert.paper_bound, 3); // D=1, H=1
        assert!(cert.cert.degree().unwrap() <= cert.paper_bound);
    }

    #[test]
    fn certificate_for_x_and_x_plus_t() {
        let fq = f2();
        let x_plus_t = BiPoly::from_z_coeffs(vec![UPoly::var(&fq), UPoly::one(&fq)]);
        let fs = vec![x(&fq), x_plus_t];
        let cert = certificate(&fs, &fq, 1).unwrap();
        assert_eq!(cert.cert, UPoly::var(&fq));
        assert_eq!(cert.generic_count, 0);

        // verification over F_4: tau = 0 is excluded, the rest pass
        let ctx = FieldCtx::new(fq.clone(), 2).unwrap();
        let mut pass = 0;
        let mut excluded = 0;
        for tau in ctx.elements() {
            let rep = verify_at(&fs, &cert, &tau, &ctx);
            assert!(rep.pass);
            if rep.excluded {
                excluded += 1;
            } else {
                pass += 1;
                assert_eq!(rep.distinct_common_zeros, Some(0));
            }
        }
        assert_eq!((pass, excluded), (3, 1));

        // at tau = 0 the specialized system is (x, x), with one common zero
        let prime_ctx = FieldCtx::new(fq.clone(), 1).unwrap();
        let rep = verify_at(&fs, &cert, &prime_ctx.zero(), &prime_ctx);
        assert!(rep.excluded);
        assert_eq!(rep.distinct_common_zeros, Some(1));
    }

    #[test]
    fn single_polynomial_certificate_tracks_content() {
        // fs = (t(x - t)): at tau = 0 the polynomial vanishes identically,
        // so Delta must pick up the content t.
        let fq = f2();
        let f = x_minus_t(&fq).scale_upoly(&UPoly::var(&fq), &fq);
        let cert = certificate(&[f.clone()], &fq, 0).unwrap();
        assert_eq!(cert.factors.delta, UPoly::var(&fq));
        assert_eq!(cert.generic_count, 1);
        let prime_ctx = FieldCtx::new(fq.clone(), 1).unwrap();
        let rep = verify_at(&[f], &cert, &prime_ctx.zero(), &prime_ctx);
        assert!(rep.excluded);
        assert_eq!(rep.distinct_common_zeros, None);
    }

    #[test]
    fn certificates_are_deterministic() {
        let fq = f2();
        let t = UPoly::var(&fq);
        let fs = vec![
            x(&fq).mul(&x(&fq), &fq),
            BiPoly::from_z_coeffs(vec![t.clone(), UPoly::one(&fq)]),
            BiPoly::from_z_coeffs(vec![UPoly::from_ints(&fq, &[1, 1]), t, UPoly::one(&fq)]),
        ];
        let a = certificate(&fs, &fq, 99).unwrap();
        let b = certificate(&fs, &fq, 99).unwrap();
        assert_eq!(a.cert, b.cert);
        assert_eq!(a.alphas, b.alphas);
        let c = certificate(&fs, &fq, 100).unwrap();
        // different seed may change the draw but never soundness; the
        // factors still multiply to the certificate
        assert_eq!(
            c.cert,
            c.factors
                .delta
                .mul(&c.factors.content_h, &fq)
                .mul(&c.factors.lc_h, &fq)
                .mul(&c.factors.disc_sf_h, &fq)
        );
    }

    #[test]
    fn degenerate_all_constant_system() {
        // (t, t^2 + t): no common zeros generically; tau = 0 kills both.
        let fq = f2();
        let fs = vec![
            BiPoly::constant(UPoly::var(&fq)),
            BiPoly::constant(UPoly::from_ints(&fq, &[0, 1, 1])),
        ];
        let cert = certificate(&fs, &fq, 5).unwrap();
        assert_eq!(cert.generic_count, 0);
        assert_eq!(cert.factors.delta, UPoly::var(&fq));
        let prime_ctx = FieldCtx::new(fq.clone(), 1).unwrap();
        let rep = verify_at(&fs, &cert, &prime_ctx.zero(), &prime_ctx);
        assert!(rep.excluded);
        assert_eq!(rep.distinct_common_zeros, None);
        let rep = verify_at(&fs, &cert, &prime_ctx.one(), &prime_ctx);
        assert!(!rep.excluded);
        assert!(rep.pass);
    }
}
