//! Cofactor identities for coprime families in F_q(t)[z] and the random
//! combination that reduces a family to a coprime pair.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffield::{Fq, FqElem};
use crate::polyring::bipoly::{gcd_primitive, BiPoly};
use crate::polyring::matrix::{bareiss_det, solve_rational};
use crate::polyring::ratfunc::RatFunc;
use crate::polyring::upoly::UPoly;

/// Cofactors b_i = numerators[i] / denom with sum b_i f_i = 1.
#[derive(Clone, Debug)]
pub struct BezoutCofactors {
    pub numerators: Vec<BiPoly>,
    pub denom: UPoly,
}

impl BezoutCofactors {
    /// Largest z-degree among the cofactors, when any is nonzero.
    pub fn max_cofactor_degree(&self) -> Option<usize> {
        self.numerators.iter().filter_map(|c| c.deg_z()).max()
    }
}

/// Solve sum b_i f_i = 1 for collectively coprime f_i of z-degree at most D,
/// with deg_z b_i <= D - 1 (hence within the stated bound D). The b_i share
/// the denominator `denom`, the determinant of the pivot submatrix of the
/// coefficient system, so `sum numerators[i] * f_i = denom` exactly.
pub fn bezout_cofactors(fs: &[BiPoly], fq: &Fq) -> Result<BezoutCofactors> {
    if fs.len() < 2 {
        return Err(Error::TooFewPolynomials {
            got: fs.len(),
            need: 2,
        });
    }
    let nonzero: Vec<&BiPoly> = fs.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZeroSystem);
    }
    let mut common = nonzero[0].clone();
    for f in &nonzero[1..] {
        common = gcd_primitive(&common, f, fq);
        if common.deg_z() == Some(0) {
            break;
        }
    }
    if common.deg_z().map_or(false, |d| d > 0) {
        return Err(Error::NotCoprime {
            witness: common.to_string(),
        });
    }

    let d_max = fs.iter().filter_map(|f| f.deg_z()).max().unwrap();
    if d_max == 0 {
        // Every f_i is a z-constant; the one of least t-degree serves as the
        // denominator with a unit cofactor.
        let (j, best) = fs
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .min_by_key(|(_, f)| f.coeff_z(0, fq).degree().unwrap())
            .expect("some polynomial is nonzero");
        let mut numerators = vec![BiPoly::zero(); fs.len()];
        numerators[j] = BiPoly::one(fq);
        return Ok(BezoutCofactors {
            numerators,
            denom: best.coeff_z(0, fq),
        });
    }

    // Unknowns: coefficients of b_i up to z-degree D-1; equations: the
    // z-coefficients 0 .. 2D-1 of sum b_i f_i - 1.
    let s = fs.len();
    let rows = 2 * d_max;
    let cols = s * d_max;
    let mut m = vec![vec![RatFunc::zero(fq); cols]; rows];
    for (i, f) in fs.iter().enumerate() {
        for d in 0..d_max {
            let col = i * d_max + d;
            for (j, c) in f.z_coeffs().iter().enumerate() {
                let row = d + j;
                if row < rows && !c.is_zero() {
                    m[row][col] = RatFunc::from_poly(c.clone(), fq);
                }
            }
        }
    }
    let mut rhs = vec![RatFunc::zero(fq); rows];
    rhs[0] = RatFunc::one(fq);

    let sol = solve_rational(&m, &rhs, fq)?.ok_or_else(|| Error::InvalidParams(
        "cofactor system is inconsistent; inputs are not coprime over F_q(t)".into(),
    ))?;

    // Denominator: determinant of the pivot submatrix, over F_q[t].
    let sub: Vec<Vec<UPoly>> = sol
        .pivots
        .iter()
        .map(|&(r, _)| {
            sol.pivots
                .iter()
                .map(|&(_, c)| m[r][c].num().clone())
                .collect()
        })
        .collect();
    let denom = if sub.is_empty() {
        UPoly::one(fq)
    } else {
        bareiss_det(sub, fq)
    };
    debug_assert!(!denom.is_zero());

    let mut numerators = Vec::with_capacity(s);
    let denom_rf = RatFunc::from_poly(denom.clone(), fq);
    for i in 0..s {
        let mut coeffs = Vec::with_capacity(d_max);
        for d in 0..d_max {
            let scaled = sol.solution[i * d_max + d].mul(&denom_rf, fq);
            if scaled.den().degree() != Some(0) {
                return Err(Error::InexactDivision);
            }
            let inv = fq.inv(&scaled.den().lc())?;
            coeffs.push(scaled.num().scale(&inv, fq));
        }
        numerators.push(BiPoly::from_z_coeffs(coeffs));
    }

    #[cfg(debug_assertions)]
    {
        let mut acc = BiPoly::zero();
        for (c, f) in numerators.iter().zip(fs) {
            acc = acc.add(&c.mul(f, fq), fq);
        }
        debug_assert_eq!(acc, BiPoly::constant(denom.clone()));
    }

    Ok(BezoutCofactors { numerators, denom })
}

/// The sample set F_{q^k} for random combinations.
#[derive(Clone, Copy, Debug)]
pub struct SampleSet {
    pub ext_degree: usize,
}

/// A seeded draw f0 = f_2 + sum alpha_i f_i together with the inputs lifted
/// to the sample field's base.
#[derive(Clone, Debug)]
pub struct Combination {
    pub f0: BiPoly,
    pub alphas: Vec<FqElem>,
    pub field: Fq,
    pub lifted: Vec<BiPoly>,
}

/// Draw alpha_3..alpha_s uniformly from F_{q^k} with a seeded generator and
/// form f0 = f_2 + sum alpha_i f_i. With k > 1 the inputs are first lifted
/// coefficient-wise along the canonical base-field embedding.
pub fn random_combine(
    fs: &[BiPoly],
    fq: &Fq,
    sample: SampleSet,
    seed: u64,
) -> Result<Combination> {
    if fs.len() < 2 {
        return Err(Error::TooFewPolynomials {
            got: fs.len(),
            need: 2,
        });
    }
    if sample.ext_degree == 0 {
        return Err(Error::InvalidParams("sample extension degree must be >= 1".into()));
    }
    let (big, lifted) = lift_system(fs, fq, sample.ext_degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let card = big.order();
    let alphas: Vec<FqElem> = (0..fs.len().saturating_sub(2))
        .map(|_| big.elem_from_index(rng.gen_range(0..card)))
        .collect();
    let f0 = combine_with(&lifted, &alphas, &big);
    Ok(Combination {
        f0,
        alphas,
        field: big,
        lifted,
    })
}

/// f_2 + sum alpha_i f_i for an explicit coefficient vector (alpha_i pairs
/// with fs[i + 2]).
pub fn combine_with(fs: &[BiPoly], alphas: &[FqElem], fq: &Fq) -> BiPoly {
    assert_eq!(alphas.len() + 2, fs.len());
    let mut acc = fs[1].clone();
    for (alpha, f) in alphas.iter().zip(&fs[2..]) {
        acc = acc.add(&f.scale_fq(alpha, fq), fq);
    }
    acc
}

/// Lift the system from base F_{p^e} to F_{p^{e*k}}.
pub fn lift_system(fs: &[BiPoly], fq: &Fq, k: usize) -> Result<(Fq, Vec<BiPoly>)> {
    if k == 1 {
        return Ok((fq.clone(), fs.to_vec()));
    }
    let big = Fq::new(fq.p(), fq.e() * k)?;
    let gen_img = base_generator_image(fq, &big)?;
    let lifted = fs
        .iter()
        .map(|f| lift_bipoly(f, fq, &big, &gen_img))
        .collect();
    Ok((big, lifted))
}

/// Image in `big` of the residue-class generator of `small`, i.e. the
/// counting-order least root of small's defining polynomial.
fn base_generator_image(small: &Fq, big: &Fq) -> Result<FqElem> {
    if small.e() == 1 {
        return Ok(big.zero());
    }
    let modulus = small.modulus_coeffs();
    for cand in big.elements() {
        // evaluate the F_p-coefficient modulus at cand
        let mut acc = big.zero();
        for &c in modulus.iter().rev() {
            acc = big.mul(&acc, &cand);
            acc = big.add(&acc, &big.from_u64(c));
        }
        if acc.is_zero() {
            return Ok(cand);
        }
    }
    unreachable!("big field contains a root of the small modulus")
}

fn lift_elem(c: &FqElem, small: &Fq, big: &Fq, gen_img: &FqElem) -> FqElem {
    if small.e() == 1 {
        return big.from_u64(c.coords()[0]);
    }
    let mut acc = big.zero();
    for &d in c.coords().iter().rev() {
        acc = big.mul(&acc, gen_img);
        acc = big.add(&acc, &big.from_u64(d));
    }
    acc
}

fn lift_upoly(f: &UPoly, small: &Fq, big: &Fq, gen_img: &FqElem) -> UPoly {
    let coeffs: Vec<FqElem> = f
        .coeffs()
        .iter()
        .map(|c| lift_elem(c, small, big, gen_img))
        .collect();
    UPoly::from_coeffs(big, &coeffs)
}

fn lift_bipoly(f: &BiPoly, small: &Fq, big: &Fq, gen_img: &FqElem) -> BiPoly {
    BiPoly::from_z_coeffs(
        f.z_coeffs()
            .iter()
            .map(|c| lift_upoly(c, small, big, gen_img))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    fn z(fq: &Fq) -> BiPoly {
        BiPoly::z_var(fq)
    }

    fn z_plus(c: &UPoly, fq: &Fq) -> BiPoly {
        BiPoly::from_z_coeffs(vec![c.clone(), UPoly::one(fq)])
    }

    #[test]
    fn pair_cofactors_z_and_z_plus_t() {
        let fq = f2();
        let t = UPoly::var(&fq);
        let fs = vec![z(&fq), z_plus(&t, &fq)];
        let cof = bezout_cofactors(&fs, &fq).unwrap();
        // (1/t) z + (1/t)(z + t) = 1 over F_2
        assert_eq!(cof.denom, t);
        assert_eq!(cof.numerators[0], BiPoly::one(&fq));
        assert_eq!(cof.numerators[1], BiPoly::one(&fq));
        assert!(cof.max_cofactor_degree().unwrap() <= 1);
    }

    #[test]
    fn unit_member_gives_trivial_cofactors() {
        let fq = f2();
        let g = z_plus(&UPoly::var(&fq), &fq);
        let fs = vec![BiPoly::one(&fq), g];
        let cof = bezout_cofactors(&fs, &fq).unwrap();
        assert_eq!(cof.numerators[0], BiPoly::constant(cof.denom.clone()));
        assert!(cof.numerators[1].is_zero());
    }

    #[test]
    fn triple_with_shifted_constants() {
        let fq = f2();
        let t = UPoly::var(&fq);
        let t2 = UPoly::from_ints(&fq, &[0, 0, 1]);
        let fs = vec![z(&fq), z_plus(&t, &fq), z_plus(&t2, &fq)];
        let cof = bezout_cofactors(&fs, &fq).unwrap();
        let mut acc = BiPoly::zero();
        for (c, f) in cof.numerators.iter().zip(&fs) {
            acc = acc.add(&c.mul(f, &fq), &fq);
        }
        assert_eq!(acc, BiPoly::constant(cof.denom.clone()));
        assert!(cof.max_cofactor_degree().unwrap() <= 1);
    }

    #[test]
    fn rejects_non_coprime_input() {
        let fq = f2();
        let t = UPoly::var(&fq);
        let shared = z_plus(&t, &fq);
        let fs = vec![shared.mul(&z(&fq), &fq), shared.mul(&z_plus(&UPoly::one(&fq), &fq), &fq)];
        match bezout_cofactors(&fs, &fq) {
            Err(Error::NotCoprime { witness }) => {
                assert!(witness.contains("[0,[0,1]]"), "witness was {witness}");
            }
            other => panic!("expected NotCoprime, got {other:?}"),
        }
    }

    #[test]
    fn combine_passthrough_for_pairs() {
        let fq = f2();
        let fs = vec![z(&fq), z_plus(&UPoly::var(&fq), &fq)];
        let combo = random_combine(&fs, &fq, SampleSet { ext_degree: 1 }, 7).unwrap();
        assert!(combo.alphas.is_empty());
        assert_eq!(combo.f0, fs[1]);
    }

    #[test]
    fn spec_failure_set_is_exactly_alpha_one() {
        // fs = (z, z+t, z+t) over F_2 sampled in F_4: the draw fails iff
        // alpha = 1 (then f0 = 0), a 1-in-4 event matching D/#A.
        let fq = f2();
        let t = UPoly::var(&fq);
        let fs = vec![z(&fq), z_plus(&t, &fq), z_plus(&t, &fq)];
        let (big, lifted) = lift_system(&fs, &fq, 2).unwrap();
        assert_eq!(big.order(), 4);
        let full_gcd_deg = {
            let mut g = lifted[0].clone();
            for f in &lifted[1..] {
                g = gcd_primitive(&g, f, &big);
            }
            g.deg_z().unwrap()
        };
        assert_eq!(full_gcd_deg, 0);
        let mut failures = Vec::new();
        for alpha in big.elements() {
            let f0 = combine_with(&lifted, &[alpha.clone()], &big);
            let degraded = if f0.is_zero() {
                true
            } else {
                gcd_primitive(&f0, &lifted[0], &big).deg_z().unwrap() != full_gcd_deg
            };
            if degraded {
                failures.push(alpha);
            }
        }
        assert_eq!(failures, vec![big.one()]);
    }

    #[test]
    fn lifting_preserves_arithmetic() {
        // (f*g) lifted equals lifted(f) * lifted(g) for an e > 1 base.
        let f4 = Fq::new(2, 2).unwrap();
        let u = f4.elem(&[0, 1]).unwrap();
        let f = BiPoly::from_z_coeffs(vec![
            UPoly::from_coeffs(&f4, &[u.clone(), f4.one()]),
            UPoly::constant(&f4, u.clone()),
        ]);
        let g = BiPoly::from_z_coeffs(vec![UPoly::one(&f4), UPoly::from_coeffs(&f4, &[u])]);
        let prod = f.mul(&g, &f4);
        let (big, lifted) = lift_system(&[f, g, prod], &f4, 2).unwrap();
        assert_eq!(big.e(), 4);
        assert_eq!(lifted[0].mul(&lifted[1], &big), lifted[2]);
    }
}
