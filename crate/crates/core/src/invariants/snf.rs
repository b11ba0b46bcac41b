//! Smith normal form with explicit unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, its nonzero
/// entries positive and forming a divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Re-checks every defining property against `m` by exact arithmetic.
    pub fn certifies(&self, m: &IntMatrix) -> bool {
        let product = &(&self.u * m) * &self.v;
        if product != self.d || !self.d.is_diagonal() {
            return false;
        }
        if !self.u.is_unimodular() || !self.v.is_unimodular() {
            return false;
        }
        let diag = self.diagonal();
        diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (&w[1] % &w[0]).is_zero()
                }
            })
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let x = m.get(i, c).clone();
                let y = std::mem::replace(m.get_mut(j, c), x);
                m.set(i, c, y);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let x = m.get(r, i).clone();
                let y = std::mem::replace(m.get_mut(r, j), x);
                m.set(r, i, y);
            }
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let delta = m.get(j, c) * k;
                *m.get_mut(i, c) += delta;
            }
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let delta = m.get(r, j) * k;
                *m.get_mut(r, i) += delta;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let x = -m.get(i, c).clone();
                m.set(i, c, x);
            }
        }
    }

    /// Position of the smallest nonzero |entry| in the lower-right block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn process(&mut self, t: usize) -> bool {
        let Some((pi, pj)) = self.min_entry(t) else {
            return false;
        };
        self.swap_rows(t, pi);
        self.swap_cols(t, pj);
        loop {
            let pivot = self.a.get(t, t).clone();
            // clear column t below the pivot
            let mut leftover = None;
            for i in t + 1..self.a.rows() {
                let q = self.a.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    self.add_row(i, t, &-q);
                }
                if !self.a.get(i, t).is_zero() {
                    leftover = Some(i);
                }
            }
            if let Some(i) = leftover {
                self.swap_rows(t, self.smallest_in_col(t, i));
                continue;
            }
            // clear row t right of the pivot
            let mut leftover = None;
            for j in t + 1..self.a.cols() {
                let q = self.a.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    self.add_col(j, t, &-q);
                }
                if !self.a.get(t, j).is_zero() {
                    leftover = Some(j);
                }
            }
            if let Some(j) = leftover {
                self.swap_cols(t, self.smallest_in_row(t, j));
                continue;
            }
            // the pivot must divide the remaining block
            let bad = (t + 1..self.a.rows()).find(|&i| {
                (t + 1..self.a.cols()).any(|j| !(self.a.get(i, j) % &pivot).is_zero())
            });
            match bad {
                Some(i) => self.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if self.a.get(t, t).is_negative() {
            self.negate_row(t);
        }
        true
    }

    fn smallest_in_col(&self, t: usize, fallback: usize) -> usize {
        (t..self.a.rows())
            .filter(|&i| !self.a.get(i, t).is_zero())
            .min_by(|&x, &y| self.a.get(x, t).abs().cmp(&self.a.get(y, t).abs()))
            .unwrap_or(fallback)
    }

    fn smallest_in_row(&self, t: usize, fallback: usize) -> usize {
        (t..self.a.cols())
            .filter(|&j| !self.a.get(t, j).is_zero())
            .min_by(|&x, &y| self.a.get(t, x).abs().cmp(&self.a.get(t, y).abs()))
            .unwrap_or(fallback)
    }
}

/// Smith normal form by exact integer elimination.
///
/// Every row operation is mirrored into `u` and every column operation
/// into `v`, so the result certifies itself via
/// [`SmithNormalForm::certifies`].
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
    };
    for t in 0..m.rows().min(m.cols()) {
        if !w.process(t) {
            break;
        }
    }
    let snf = SmithNormalForm {
        d: w.a,
        u: w.u,
        v: w.v,
    };
    debug_assert!(snf.certifies(m), "Smith normal form failed self-check");
    snf
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn diag(m: &IntMatrix) -> Vec<i64> {
        let s = smith_normal_form(m);
        assert!(s.certifies(m));
        s.diagonal().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(diag(&im(&[&[2, 0], &[0, 3]])), [1, 6]);
        assert_eq!(diag(&im(&[&[0, -3], &[-2, 0]])), [1, 6]);
        assert_eq!(diag(&im(&[&[0, 0], &[0, 0]])), [0, 0]);
        assert_eq!(diag(&im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), [2, 6, 12]);
    }

    #[test]
    fn rectangular() {
        assert_eq!(diag(&im(&[&[6, 4, 2]])), [2]);
        assert_eq!(diag(&im(&[&[4], &[6]])), [2]);
        let s = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert_eq!(s.d.rows(), 0);
    }
}
