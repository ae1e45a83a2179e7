//! Incremental linear dependence detection over F_q.
//!
//! Feeds vectors one at a time into a row-reduced basis; the first dependent
//! vector comes back expressed as a combination of the vectors pushed before
//! it. This drives both minimal polynomials and torsion orders.

use crate::ffield::fq::{Fq, FqElem};

pub(crate) struct DependenceFinder {
    fq: Fq,
    dim: usize,
    /// Rows in echelon form: (pivot column, reduced vector, combination of
    /// the original pushed vectors that produced it).
    rows: Vec<(usize, Vec<FqElem>, Vec<FqElem>)>,
    pushed: usize,
}

impl DependenceFinder {
    pub fn new(fq: &Fq, dim: usize) -> Self {
        DependenceFinder {
            fq: fq.clone(),
            dim,
            rows: Vec::new(),
            pushed: 0,
        }
    }

    /// Push the next vector. Returns `Some(coeffs)` when it is a linear
    /// combination `v = sum coeffs[i] * v_i` of the previously pushed
    /// vectors, `None` when it is independent (and then stores it).
    pub fn push(&mut self, v: Vec<FqElem>) -> Option<Vec<FqElem>> {
        assert_eq!(v.len(), self.dim);
        let fq = self.fq.clone();
        let mut vec = v;
        let mut combo = vec![fq.zero(); self.pushed];

        for (pivot, row, row_combo) in &self.rows {
            let c = vec[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            // row has pivot entry 1, so the elimination factor is c itself
            for (x, r) in vec.iter_mut().zip(row) {
                *x = fq.sub(x, &fq.mul(&c, r));
            }
            for (x, r) in combo.iter_mut().zip(row_combo) {
                *x = fq.add(x, &fq.mul(&c, r));
            }
        }

        let pivot = vec.iter().position(|x| !x.is_zero());
        match pivot {
            None => {
                self.pushed += 1;
                Some(combo)
            }
            Some(pivot) => {
                let inv = fq.inv(&vec[pivot]).expect("pivot nonzero");
                for x in vec.iter_mut() {
                    *x = fq.mul(x, &inv);
                }
                // Store the row's expression over the originals: the reduced
                // row equals inv * (v_new - sum combo_i v_i).
                let mut stored = vec![fq.zero(); self.pushed + 1];
                for (s, c) in stored.iter_mut().zip(&combo) {
                    *s = fq.neg(&fq.mul(&inv, c));
                }
                stored[self.pushed] = inv;
                self.pushed += 1;
                self.rows.push((pivot, vec, stored));
                None
            }
        }
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}
