//! Small exact linear algebra over F_q[t] and F_q(t): fraction-free
//! determinants and Gaussian elimination with rational entries. Matrices at
//! this scale are tiny (a handful of rows), so clarity wins over blocking.

use crate::error::{Error, Result};
use crate::ffield::Fq;
use crate::polyring::ratfunc::RatFunc;
use crate::polyring::upoly::UPoly;

/// Determinant of a square matrix over F_q[t] by Bareiss one-step
/// fraction-free elimination; every interior division is exact.
pub fn bareiss_det(mut m: Vec<Vec<UPoly>>, fq: &Fq) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one(fq);
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut negate = false;
    let mut prev = UPoly::one(fq);
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return UPoly::zero(fq),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[k][k].mul(&m[i][j], fq);
                let b = m[i][k].mul(&m[k][j], fq);
                m[i][j] = a
                    .sub(&b, fq)
                    .exact_div(&prev, fq)
                    .expect("Bareiss pivot divides");
            }
            m[i][k] = UPoly::zero(fq);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg(fq)
    } else {
        det
    }
}

/// Outcome of rational Gaussian elimination on (matrix | rhs).
pub struct LinearSolution {
    /// A particular solution with free variables set to zero.
    pub solution: Vec<RatFunc>,
    /// Pivot positions as (row, column) pairs in elimination order.
    pub pivots: Vec<(usize, usize)>,
}

/// Solve `m x = rhs` over F_q(t). Returns None when inconsistent. The pivot
/// choice (first row with a nonzero entry, columns left to right) is
/// deterministic, so the particular solution is reproducible.
pub fn solve_rational(
    m: &[Vec<RatFunc>],
    rhs: &[RatFunc],
    fq: &Fq,
) -> Result<Option<LinearSolution>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<RatFunc>> = m.to_vec();
    let mut b: Vec<RatFunc> = rhs.to_vec();
    if b.len() != rows {
        return Err(Error::InvalidParams("rhs length mismatch".into()));
    }

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (next_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(next_row, pivot_row);
        b.swap(next_row, pivot_row);
        let inv = RatFunc::one(fq).div(&a[next_row][col], fq)?;
        for j in col..cols {
            a[next_row][j] = a[next_row][j].mul(&inv, fq);
        }
        b[next_row] = b[next_row].mul(&inv, fq);
        for r in 0..rows {
            if r == next_row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..cols {
                let delta = factor.mul(&a[next_row][j], fq);
                a[r][j] = a[r][j].sub(&delta, fq);
            }
            let delta = factor.mul(&b[next_row], fq);
            b[r] = b[r].sub(&delta, fq);
        }
        pivots.push((next_row, col));
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    // consistency: zero rows must have zero rhs
    for r in next_row..rows {
        if !b[r].is_zero() {
            return Ok(None);
        }
    }
    let mut solution = vec![RatFunc::zero(fq); cols];
    for &(r, c) in &pivots {
        solution[c] = b[r].clone();
    }
    Ok(Some(LinearSolution { solution, pivots }))
}
