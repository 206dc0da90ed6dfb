//! Incremental reduced row echelon form over a field, with a caller-chosen
//! column priority deciding where pivots land.

use super::coeff::Field;

#[derive(Debug, Clone)]
pub struct Echelon<C> {
    ncols: usize,
    /// `priority[col]`: smaller means preferred as a pivot.
    priority: Vec<usize>,
    rows: Vec<Vec<C>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl<C: Field> Echelon<C> {
    /// Pivots go to the leftmost nonzero column.
    pub fn new(ncols: usize) -> Self {
        Self::with_priority((0..ncols).collect())
    }

    pub fn with_priority(priority: Vec<usize>) -> Self {
        let ncols = priority.len();
        Self {
            ncols,
            priority,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[C])> {
        self.pivots.iter().copied().zip(self.rows.iter().map(Vec::as_slice))
    }

    pub fn row_for_pivot(&self, col: usize) -> Option<&[C]> {
        self.pivot_row[col].map(|r| self.rows[r].as_slice())
    }

    /// Reduce `v` against the current rows.
    pub fn reduce(&self, v: &mut [C]) {
        debug_assert_eq!(v.len(), self.ncols);
        for (r, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(&self.rows[r]) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
    }

    /// Insert `v`; returns `true` when it was independent of the span.
    pub fn insert(&mut self, mut v: Vec<C>) -> bool {
        self.reduce(&mut v);
        let pivot = (0..self.ncols)
            .filter(|&c| !v[c].is_zero())
            .min_by_key(|&c| self.priority[c]);
        let Some(p) = pivot else {
            return false;
        };
        let inv = C::one() / v[p].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.pivots.push(p);
        self.rows.push(v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::coeff::Gf2;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rank_and_reduction_over_rationals() {
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![q(1), q(2), q(3)]));
        assert!(e.insert(vec![q(2), q(4), q(7)]));
        assert!(!e.insert(vec![q(3), q(6), q(10)]));
        assert_eq!(e.rank(), 2);
        let mut v = vec![q(0), q(1), q(0)];
        e.reduce(&mut v);
        assert_eq!(v, vec![q(0), q(1), q(0)]);
    }

    #[test]
    fn priority_moves_pivots() {
        let mut e = Echelon::with_priority(vec![2, 1, 0]);
        e.insert(vec![Gf2::ONE, Gf2::ONE, Gf2::ONE]);
        assert!(e.row_for_pivot(2).is_some());
        assert!(e.row_for_pivot(0).is_none());
    }
}
