//! Cross-module properties: algebraic laws of the module action, height and
//! degree laws of the family polynomials, the specialization bridge, and
//! statistics of the gcd-preserving random combination.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dtors_core::drinfeld::{leq_power, monic_operators, DrinfeldParams, GenericFamily};
use dtors_core::ffield::{ExtFieldElem, FieldCtx, Fq};
use dtors_core::polyring::matrix::solve_rational;
use dtors_core::polyring::ratfunc::RatFunc;
use dtors_core::polyring::{
    bezout_cofactors, combine_with, gcd_primitive, random_combine, resultant, sample, BiPoly,
    SampleSet, UPoly,
};
use dtors_core::specialize::{certificate, generic_common_zeros, verify_at, verify_at_with};

fn small_configs() -> Vec<(u64, usize)> {
    vec![(2, 2), (2, 3), (3, 2), (3, 3)]
}

#[test]
fn gauss_norm_multiplicativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [2u64, 3, 5] {
        let fq = Fq::prime(p).unwrap();
        for _ in 0..200 {
            let (df, hf) = (rng.gen_range(0..4), rng.gen_range(0..4));
            let (dg, hg) = (rng.gen_range(0..4), rng.gen_range(0..4));
            let f = sample::bipoly(&mut rng, &fq, df, hf);
            let g = sample::bipoly(&mut rng, &fq, dg, hg);
            let prod = f.mul(&g, &fq);
            assert_eq!(
                prod.height().unwrap(),
                f.height().unwrap() + g.height().unwrap()
            );
        }
    }
}

#[test]
fn gcd_divides_and_detects_resultant_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for p in [2u64, 3] {
        let fq = Fq::prime(p).unwrap();
        for _ in 0..150 {
            let df = rng.gen_range(1..4);
            let dg = rng.gen_range(1..4);
            let f = sample::bipoly(&mut rng, &fq, df, 2);
            let g = sample::bipoly(&mut rng, &fq, dg, 2);
            let d = gcd_primitive(&f, &g, &fq);
            if d.deg_z().map_or(false, |x| x > 0) {
                assert!(f.exact_div(&d, &fq).is_ok());
                assert!(g.exact_div(&d, &fq).is_ok());
            }
            let res = resultant(&f, &g, &fq).unwrap();
            assert_eq!(res.is_zero(), d.deg_z().map_or(false, |x| x > 0));
        }
    }
}

#[test]
fn distinct_root_count_bounded_by_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let fq = Fq::prime(2).unwrap();
    for _ in 0..150 {
        let df = rng.gen_range(1..5);
        let f = sample::bipoly(&mut rng, &fq, df, 2);
        let n = f.distinct_root_count(&fq).unwrap();
        assert!(n <= f.deg_z().unwrap());
        // the separable squarefree divisor has at most that many roots and
        // counts its own degree exactly
        let sep = f.separable_part(&fq).unwrap();
        if let Some(d) = sep.deg_z() {
            if d > 0 {
                assert_eq!(sep.distinct_root_count(&fq).unwrap(), d);
            }
        }
    }
}

#[test]
fn bezout_identity_and_degree_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for p in [2u64, 3] {
        let fq = Fq::prime(p).unwrap();
        let mut tried = 0;
        while tried < 60 {
            let s = rng.gen_range(2..=4);
            let fs: Vec<BiPoly> = (0..s)
                .map(|_| {
                    let d = rng.gen_range(0..4);
                    sample::bipoly(&mut rng, &fq, d, 2)
                })
                .collect();
            match bezout_cofactors(&fs, &fq) {
                Ok(cof) => {
                    tried += 1;
                    let mut acc = BiPoly::zero();
                    for (c, f) in cof.numerators.iter().zip(&fs) {
                        acc = acc.add(&c.mul(f, &fq), &fq);
                    }
                    assert_eq!(acc, BiPoly::constant(cof.denom.clone()));
                    let d = fs.iter().filter_map(|f| f.deg_z()).max().unwrap();
                    if let Some(max_deg) = cof.max_cofactor_degree() {
                        assert!(max_deg <= d, "cofactor degree {max_deg} > D={d}");
                    }
                }
                Err(_) => continue,
            }
        }
    }
}

#[test]
fn random_combination_preserves_gcd_degree_statistically() {
    // failure rate <= D/#A + 3 sigma over seeded trials with A = F_{q^k}
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for (p, k, trials) in [(2u64, 2usize, 300usize), (3, 1, 300)] {
        let fq = Fq::prime(p).unwrap();
        let mut failures = 0usize;
        let mut d_max = 0usize;
        for trial in 0..trials {
            let s = rng.gen_range(3..=4);
            let mut fs: Vec<BiPoly> = (0..s)
                .map(|_| {
                    let d = rng.gen_range(1..=3);
                    sample::bipoly(&mut rng, &fq, d, 2)
                })
                .collect();
            // plant occasional shared structure so failures are reachable
            if rng.gen_bool(0.3) {
                let last = fs.len() - 1;
                fs[last] = fs[1].clone();
            }
            d_max = d_max.max(fs.iter().filter_map(|f| f.deg_z()).max().unwrap());
            let combo =
                random_combine(&fs, &fq, SampleSet { ext_degree: k }, 1000 + trial as u64)
                    .unwrap();
            let big = &combo.field;
            let mut full = combo.lifted[0].clone();
            for f in &combo.lifted[1..] {
                full = gcd_primitive(&full, f, big);
            }
            let full_deg = full.deg_z().unwrap();
            let pair_deg = if combo.f0.is_zero() {
                usize::MAX
            } else {
                gcd_primitive(&combo.lifted[0], &combo.f0, big)
                    .deg_z()
                    .unwrap()
            };
            if pair_deg != full_deg {
                failures += 1;
            }
        }
        let sample_size = (p as f64).powi(k as i32);
        let p_bound = (d_max as f64 / sample_size).min(1.0);
        let sigma = (p_bound * (1.0 - p_bound) / trials as f64).sqrt();
        let limit = p_bound + 3.0 * sigma;
        let rate = failures as f64 / trials as f64;
        assert!(
            rate <= limit,
            "p={p} k={k}: failure rate {rate} exceeds {limit}"
        );
    }
}

fn random_point(rng: &mut ChaCha8Rng, fq: &Fq, max_deg: usize) -> RatFunc {
    sample::ratfunc(rng, fq, max_deg)
}

#[test]
fn module_action_laws_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for (p, r) in small_configs() {
        let fq = Fq::prime(p).unwrap();
        for ell in 1..=3usize {
            let ctx = FieldCtx::new(fq.clone(), ell).unwrap();
            let rand_elem = |rng: &mut ChaCha8Rng| ctx.elem_from_index(rng.gen_range(0..ctx.order()));
            for _ in 0..25 {
                let tau = rand_elem(&mut rng);
                let lambda = rand_elem(&mut rng);
                let params = DrinfeldParams::new(r, tau, lambda, &ctx).unwrap();
                let p_op = sample::upoly(&mut rng, &fq, 2);
                let q_op = sample::nonzero_upoly(&mut rng, &fq, 2);
                let c = rand_elem(&mut rng);
                let d = rand_elem(&mut rng);

                // additivity in the point and in the operator
                let sum_pt = params.apply(&p_op, &ctx.add(&c, &d), &ctx).unwrap();
                let split = ctx.add(
                    &params.apply(&p_op, &c, &ctx).unwrap(),
                    &params.apply(&p_op, &d, &ctx).unwrap(),
                );
                assert_eq!(sum_pt, split);

                let sum_op = params
                    .apply(&p_op.add(&q_op, &fq), &c, &ctx)
                    .unwrap();
                let split_op = ctx.add(
                    &params.apply(&p_op, &c, &ctx).unwrap(),
                    &params.apply(&q_op, &c, &ctx).unwrap(),
                );
                assert_eq!(sum_op, split_op);

                // F_q-linearity
                let zeta = fq.elem_from_index(rng.gen_range(0..fq.order()));
                let scaled = params
                    .apply(&p_op, &ctx.mul(&ctx.scalar(&zeta), &c), &ctx)
                    .unwrap();
                assert_eq!(
                    scaled,
                    ctx.mul(&ctx.scalar(&zeta), &params.apply(&p_op, &c, &ctx).unwrap())
                );

                // multiplicativity: Phi_{PQ} = Phi_P after Phi_Q, both ways
                let prod = p_op.mul(&q_op, &fq);
                let via_prod = params.apply(&prod, &c, &ctx).unwrap();
                let inner_q = params.apply(&q_op, &c, &ctx).unwrap();
                assert_eq!(via_prod, params.apply(&p_op, &inner_q, &ctx).unwrap());
                let inner_p = params.apply(&p_op, &c, &ctx).unwrap();
                assert_eq!(via_prod, params.apply(&q_op, &inner_p, &ctx).unwrap());

                // operator/point agreement
                let operator = params.operator_poly(&p_op, &ctx);
                assert_eq!(operator.eval(&c, &ctx), params.apply(&p_op, &c, &ctx).unwrap());
                if p_op.degree().map_or(false, |d| d >= 1) && p_op.is_monic(&fq) {
                    assert_eq!(operator.q_degree(), Some(r * p_op.degree().unwrap()));
                }
            }
        }
    }
}

#[test]
fn scalar_multiples_share_the_order() {
    let fq = Fq::prime(3).unwrap();
    let ctx = FieldCtx::new(fq.clone(), 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let tau = ctx.elem_from_index(rng.gen_range(0..ctx.order()));
        let lambda = ctx.elem_from_index(rng.gen_range(0..ctx.order()));
        let params = DrinfeldParams::new(2, tau, lambda, &ctx).unwrap();
        let c = ctx.elem_from_index(rng.gen_range(0..ctx.order()));
        let order = params.torsion_order(&c, &ctx);
        for zeta in fq.elements().skip(1) {
            let scaled = ctx.mul(&ctx.scalar(&zeta), &c);
            assert_eq!(params.torsion_order(&scaled, &ctx), order);
        }
    }
}

#[test]
fn bridge_identity_between_family_and_action() {
    // specialize(action_poly(a, P), tau) at z = lambda equals
    // a2(tau)^(q^(r deg P)) * Phi^{(tau,lambda)}_P(a(tau))
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for (p, r) in small_configs() {
        let fq = Fq::prime(p).unwrap();
        for _ in 0..30 {
            let a = random_point(&mut rng, &fq, 2);
            let fam = GenericFamily::new(r, a.clone()).unwrap();
            let deg_p = rng.gen_range(1..=2usize);
            let op = sample::upoly_exact(&mut rng, &fq, deg_p);
            let g = fam.action_poly(&op, &fq).unwrap();

            let ell = rng.gen_range(1..=4usize);
            let ctx = FieldCtx::new(fq.clone(), ell).unwrap();
            let tau = ctx.elem_from_index(rng.gen_range(0..ctx.order()));
            if a.den().eval_ext(&tau, &ctx).is_zero() {
                continue;
            }
            let lambda = ctx.elem_from_index(rng.gen_range(0..ctx.order()));

            let lhs = g.specialize(&tau, &ctx).eval(&lambda, &ctx);

            let params = DrinfeldParams::new(r, tau.clone(), lambda, &ctx).unwrap();
            let point = a.eval_ext(&tau, &ctx).unwrap();
            let phi = params.apply(&op, &point, &ctx).unwrap();
            let den_val = a.den().eval_ext(&tau, &ctx);
            // den^(q^(r deg P)) via r*deg P Frobenius steps
            let scale = ctx.frobenius(&den_val, r * deg_p);
            assert_eq!(lhs, ctx.mul(&scale, &phi), "p={p} r={r}");
        }
    }
}

#[test]
fn exact_degree_and_height_laws_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for (p, r) in [(2u64, 2usize), (3, 2)] {
        let fq = Fq::prime(p).unwrap();
        for _ in 0..10 {
            let a = random_point(&mut rng, &fq, 3);
            let d = a.degree();
            let fam = GenericFamily::new(r, a).unwrap();
            for n in 1..=2usize {
                let op = UPoly::monomial(&fq, n, fq.one());
                let g = fam.action_poly(&op, &fq).unwrap();
                assert_eq!(g.deg_z(), Some((p as usize).pow((r * (n - 1)) as u32)));
                // height law for iterates: h <= (2 + deg a)^(q^(rn))
                let h = g.height().unwrap();
                assert!(leq_power(
                    h as u128,
                    (2 + d) as u128,
                    (p as u32).pow((r * n) as u32).min(1 << 20) as u32
                ));
            }
        }
    }
}

#[test]
fn common_root_of_products_matches_small_orders() {
    // lambda is a common root of the specialized order-bound products of
    // a = 1 and b = t exactly when both points have orders of degree <= M;
    // exhaustive for q=2, r=2, ell <= 4, M <= 2.
    let fq = Fq::prime(2).unwrap();
    let a = RatFunc::one(&fq);
    let b = RatFunc::from_poly(UPoly::var(&fq), &fq);
    let fam_a = GenericFamily::new(2, a.clone()).unwrap();
    let fam_b = GenericFamily::new(2, b.clone()).unwrap();
    for m in 1..=2usize {
        let ga = fam_a.order_bound_product(m, 100_000, &fq).unwrap();
        let gb = fam_b.order_bound_product(m, 100_000, &fq).unwrap();
        for ell in 1..=4usize {
            let ctx = FieldCtx::new(fq.clone(), ell).unwrap();
            for tau in ctx.elements() {
                let sa = ga.specialize(&tau, &ctx);
                let sb = gb.specialize(&tau, &ctx);
                let pa = a.eval_ext(&tau, &ctx).unwrap();
                let pb = b.eval_ext(&tau, &ctx).unwrap();
                for lambda in ctx.elements() {
                    let common_root = sa.eval(&lambda, &ctx).is_zero()
                        && sb.eval(&lambda, &ctx).is_zero();
                    let params =
                        DrinfeldParams::new(2, tau.clone(), lambda.clone(), &ctx).unwrap();
                    let da = params.torsion_order(&pa, &ctx).degree().unwrap();
                    let db = params.torsion_order(&pb, &ctx).degree().unwrap();
                    assert_eq!(
                        common_root,
                        da <= m && db <= m,
                        "ell={ell} m={m} tau={} lambda={}",
                        ctx.format_elem(&tau),
                        ctx.format_elem(&lambda)
                    );
                }
            }
        }
    }
}

#[test]
fn certificate_delta_lies_in_the_pair_ideal() {
    // With the resultant path, Delta = Res_z(g1, f0) admits cofactors
    // u g1 + v f0 = Delta with u, v in F_q[t][z]; solve the coefficient
    // system over F_q(t) and clear denominators to witness membership.
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for p in [2u64, 3] {
        let fq = Fq::prime(p).unwrap();
        let mut checked = 0;
        while checked < 20 {
            let s = rng.gen_range(2..=3);
            let fs: Vec<BiPoly> = (0..s)
                .map(|_| {
                    let d = rng.gen_range(1..=2);
                    sample::bipoly(&mut rng, &fq, d, 1)
                })
                .collect();
            let Ok(cert) = certificate(&fs, &fq, 7 + checked as u64) else {
                continue;
            };
            if cert.used_elimination {
                continue;
            }
            let (h, _) = generic_common_zeros(&fs, &fq).unwrap();
            let reduced: Vec<BiPoly> = fs
                .iter()
                .filter(|f| !f.is_zero())
                .map(|f| f.exact_div(&h, &fq).unwrap())
                .collect();
            let f0 = combine_with(&reduced, &cert.alphas, &fq);
            let g1 = &reduced[0];
            let (d1, d0) = match (g1.deg_z(), f0.deg_z()) {
                (Some(a), Some(b)) if a >= 1 && b >= 1 => (a, b),
                _ => continue, // degenerate pair shapes carry no Sylvester system
            };
            assert_eq!(cert.factors.delta, resultant(g1, &f0, &fq).unwrap());

            // coefficient system for u (deg < d0) and v (deg < d1)
            let rows = d1 + d0;
            let cols = d0 + d1;
            let mut m = vec![vec![RatFunc::zero(&fq); cols]; rows];
            for du in 0..d0 {
                for (j, c) in g1.z_coeffs().iter().enumerate() {
                    if du + j < rows && !c.is_zero() {
                        m[du + j][du] = RatFunc::from_poly(c.clone(), &fq);
                    }
                }
            }
            for dv in 0..d1 {
                for (j, c) in f0.z_coeffs().iter().enumerate() {
                    if dv + j < rows && !c.is_zero() {
                        m[dv + j][d0 + dv] = RatFunc::from_poly(c.clone(), &fq);
                    }
                }
            }
            let mut rhs = vec![RatFunc::zero(&fq); rows];
            rhs[0] = RatFunc::from_poly(cert.factors.delta.clone(), &fq);
            let sol = solve_rational(&m, &rhs, &fq)
                .unwrap()
                .expect("the resultant lies in the pair ideal");
            // verify by expansion over F_q(t): u g1 + v f0 = Delta
            let eval = |coeffs: &[RatFunc], f: &BiPoly| -> Vec<RatFunc> {
                let deg = coeffs.len() + f.deg_z().unwrap();
                let mut acc = vec![RatFunc::zero(&fq); deg + 1];
                for (d, c) in coeffs.iter().enumerate() {
                    for (j, fc) in f.z_coeffs().iter().enumerate() {
                        let term = c.mul(&RatFunc::from_poly(fc.clone(), &fq), &fq);
                        acc[d + j] = acc[d + j].add(&term, &fq);
                    }
                }
                acc
            };
            let u = &sol.solution[..d0];
            let v = &sol.solution[d0..];
            let left = eval(u, g1);
            let right = eval(v, &f0);
            let n = left.len().max(right.len());
            for idx in 0..n {
                let zero = RatFunc::zero(&fq);
                let l = left.get(idx).unwrap_or(&zero);
                let r = right.get(idx).unwrap_or(&zero);
                let total = l.add(r, &fq);
                if idx == 0 {
                    assert_eq!(total, RatFunc::from_poly(cert.factors.delta.clone(), &fq));
                } else {
                    assert!(total.is_zero());
                }
            }
            checked += 1;
        }
    }
}

#[test]
fn certificate_soundness_smoke() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let fq = Fq::prime(2).unwrap();
    for trial in 0..30 {
        let s = rng.gen_range(1..=3);
        let fs: Vec<BiPoly> = (0..s)
            .map(|_| {
                let d = rng.gen_range(1..=3);
                sample::bipoly(&mut rng, &fq, d, 2)
            })
            .collect();
        let cert = certificate(&fs, &fq, trial as u64).unwrap();
        assert!(!cert.cert.is_zero());
        assert!(cert.cert.degree().unwrap() <= cert.guarded_bound);
        for ell in 1..=3usize {
            let ctx = FieldCtx::new(fq.clone(), ell).unwrap();
            for tau in ctx.elements() {
                let rep = verify_at(&fs, &cert, &tau, &ctx);
                assert!(rep.pass, "soundness failure at trial {trial} ell {ell}");
                // the bare factor subset is expected to be sound as well
                let paper = verify_at_with(&fs, &cert.paper_cert, cert.generic_count, &tau, &ctx);
                assert!(paper.pass, "bare certificate failed at trial {trial}");
            }
        }
    }
}

mod proptest_suite {
    use super::*;
    use proptest::prelude::*;

    fn upoly_strategy(p: u64, max_len: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0..p, 0..=max_len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn divrem_roundtrip(fc in upoly_strategy(3, 8), gc in upoly_strategy(3, 5)) {
            let fq = Fq::prime(3).unwrap();
            let f = UPoly::from_ints(&fq, &fc);
            let g = UPoly::from_ints(&fq, &gc);
            prop_assume!(!g.is_zero());
            let (q, r) = f.divrem(&g, &fq).unwrap();
            prop_assert_eq!(q.mul(&g, &fq).add(&r, &fq), f);
            if let Some(dr) = r.degree() {
                prop_assert!(dr < g.degree().unwrap());
            }
        }

        #[test]
        fn specialization_is_a_ring_homomorphism(
            fc in prop::collection::vec(upoly_strategy(2, 3), 1..4),
            gc in prop::collection::vec(upoly_strategy(2, 3), 1..4),
            idx in 0u64..8,
        ) {
            let fq = Fq::prime(2).unwrap();
            let ctx = FieldCtx::new(fq.clone(), 3).unwrap();
            let tau = ctx.elem_from_index(idx);
            let f = BiPoly::from_z_coeffs(fc.iter().map(|c| UPoly::from_ints(&fq, c)).collect());
            let g = BiPoly::from_z_coeffs(gc.iter().map(|c| UPoly::from_ints(&fq, c)).collect());
            let lhs = f.mul(&g, &fq).specialize(&tau, &ctx);
            let rhs = f.specialize(&tau, &ctx).mul(&g.specialize(&tau, &ctx), &ctx);
            prop_assert_eq!(lhs, rhs);
            let lhs_add = f.add(&g, &fq).specialize(&tau, &ctx);
            let rhs_add = f.specialize(&tau, &ctx).add(&g.specialize(&tau, &ctx), &ctx);
            prop_assert_eq!(lhs_add, rhs_add);
        }

        #[test]
        fn torsion_order_divides_annihilators(
            tau_idx in 0u64..9, lambda_idx in 0u64..9, c_idx in 0u64..9,
            qc in upoly_strategy(3, 3),
        ) {
            let fq = Fq::prime(3).unwrap();
            let ctx = FieldCtx::new(fq.clone(), 2).unwrap();
            let params = DrinfeldParams::new(
                2,
                ctx.elem_from_index(tau_idx),
                ctx.elem_from_index(lambda_idx),
                &ctx,
            ).unwrap();
            let c = ctx.elem_from_index(c_idx);
            let order = params.torsion_order(&c, &ctx);
            prop_assert!(order.degree().unwrap() <= ctx.degree());
            prop_assert!(params.apply(&order, &c, &ctx).unwrap().is_zero());
            let q_op = UPoly::from_ints(&fq, &qc);
            prop_assume!(!q_op.is_zero());
            let annihilates = params.apply(&q_op, &c, &ctx).unwrap().is_zero();
            let divides = q_op.rem(&order, &fq).unwrap().is_zero();
            prop_assert_eq!(annihilates, divides);
        }
    }
}

#[test]
fn order_bound_product_height_law() {
    // h(product over monic ops of degree <= M) under the explicit sum bound
    let fq = Fq::prime(2).unwrap();
    for a in [
        RatFunc::one(&fq),
        RatFunc::from_poly(UPoly::var(&fq), &fq),
        RatFunc::new(UPoly::one(&fq), UPoly::from_ints(&fq, &[1, 1]), &fq).unwrap(),
    ] {
        let d = a.degree().max(1) as u128;
        let fam = GenericFamily::new(2, a).unwrap();
        for m in 1..=2usize {
            let g = fam.order_bound_product(m, 100_000, &fq).unwrap();
            let h = g.height().unwrap() as u128;
            // sum over s of q^s (2 + D)^(q^(rs))
            let bound: u128 = (1..=m)
                .map(|s| {
                    let e = 2u32.pow((2 * s) as u32);
                    2u128.pow(s as u32) * (2 + d).pow(e)
                })
                .sum();
            assert!(h <= bound, "m={m}: {h} > {bound}");
            // degree below q^((M+1)(r+1))
            let deg = g.deg_z().unwrap() as u128;
            assert!(deg < 2u128.pow(((m + 1) * 3) as u32));
        }
    }
}

#[test]
fn monic_operator_count() {
    let fq = Fq::prime(3).unwrap();
    for d in 1..=3usize {
        assert_eq!(monic_operators(&fq, d).count() as u64, 3u64.pow(d as u32));
    }
}

#[allow(dead_code)]
fn format_elem_helper(ctx: &FieldCtx, e: &ExtFieldElem) -> String {
    ctx.format_elem(e)
}
