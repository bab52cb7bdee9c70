//! Exact row spaces over the rationals with deterministic Gauss-Jordan
//! reduction. Rows are kept in reduced echelon form at all times so that
//! membership tests and residuals are canonical.

use crate::rat::Rat;
use num_traits::{One, Zero};

/// A subspace of Q^n in reduced row echelon form.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    pub ncols: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        RowSpace { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the stored rows; the result has zeros in every
    /// pivot column.
    pub fn residual(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ncols);
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let factor = w[p].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *wj -= &factor * rj;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.residual(v).iter().all(|x| x.is_zero())
    }

    /// Insert a vector; returns true if it enlarged the space.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut w = self.residual(v);
        let pivot = match w.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = Rat::one() / w[pivot].clone();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // back-substitute into existing rows, then keep rows sorted by pivot
        for row in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (rj, wj) in row.iter_mut().zip(&w) {
                if !wj.is_zero() {
                    *rj -= &factor * wj;
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(at, w);
        self.pivots.insert(at, pivot);
        true
    }

    pub fn insert_all<'a, I: IntoIterator<Item = &'a Vec<Rat>>>(&mut self, it: I) {
        for v in it {
            self.insert(v);
        }
    }
}

/// Rank of an arbitrary list of vectors.
pub fn rank_of(ncols: usize, vecs: &[Vec<Rat>]) -> usize {
    let mut sp = RowSpace::new(ncols);
    sp.insert_all(vecs);
    sp.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn basic_rank_and_membership() {
        let mut sp = RowSpace::new(3);
        assert!(sp.insert(&v(&[1, 2, 3])));
        assert!(sp.insert(&v(&[0, 1, 1])));
        assert!(!sp.insert(&v(&[1, 3, 4])));
        assert_eq!(sp.rank(), 2);
        assert!(sp.contains(&v(&[2, 5, 7])));
        assert!(!sp.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn rref_is_canonical() {
        // same span inserted in two orders gives identical rows
        let a = [v(&[2, 4, 6]), v(&[1, 1, 1]), v(&[0, 3, 7])];
        let mut s1 = RowSpace::new(3);
        let mut s2 = RowSpace::new(3);
        s1.insert_all(a.iter());
        s2.insert_all(a.iter().rev());
        assert_eq!(s1.rows(), s2.rows());
        assert_eq!(s1.pivots(), s2.pivots());
    }

    #[test]
    fn residual_zeroes_pivot_columns() {
        let mut sp = RowSpace::new(4);
        sp.insert(&[rat_int(1), rat(1, 2), rat_int(0), rat_int(3)]);
        sp.insert(&v(&[0, 0, 1, 1]));
        let r = sp.residual(&[rat_int(2), rat_int(7), rat_int(4), rat_int(0)]);
        assert!(r[0].is_zero());
        assert!(r[2].is_zero());
        assert_eq!(r[1], rat_int(6));
    }

    #[test]
    fn rank_of_matches() {
        assert_eq!(rank_of(2, &[v(&[1, 1]), v(&[2, 2]), v(&[1, 0])]), 2);
        assert_eq!(rank_of(2, &[]), 0);
    }
}
