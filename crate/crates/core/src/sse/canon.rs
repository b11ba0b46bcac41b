//! Canonical forms of square matrices under simultaneous row/column
//! permutation, used to deduplicate search states.

use num_bigint::BigUint;

use crate::error::Result;
use crate::matrix::NNMatrix;

/// Largest size for which canonical forms are exact.
pub const EXACT_CANON_MAX: usize = 6;

/// Canonical representative of a square matrix.
///
/// `key` lists the entries of the permuted matrix shell by shell (shell
/// `s` is `(s,s)`, then `(s,t), (t,s)` for `t < s`). For sizes up to
/// [`EXACT_CANON_MAX`] the key is the lexicographic minimum over all
/// permutations, so two matrices are permutation-similar iff their keys
/// match. Larger sizes use a degree-sorted ordering and `exact` is false.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Canonical<T> {
    pub n: usize,
    pub key: Vec<T>,
    /// `perm[i]` is the original index placed at position `i`.
    pub perm: Vec<usize>,
    pub exact: bool,
}

fn shell<T: Clone>(p: &[usize], s: usize, get: &impl Fn(usize, usize) -> T, out: &mut Vec<T>) {
    out.push(get(p[s], p[s]));
    for t in 0..s {
        out.push(get(p[s], p[t]));
        out.push(get(p[t], p[s]));
    }
}

struct Search<'a, T, F> {
    n: usize,
    get: &'a F,
    best: Option<(Vec<T>, Vec<usize>)>,
    perm: Vec<usize>,
    used: Vec<bool>,
    key: Vec<T>,
}

impl<T: Ord + Clone, F: Fn(usize, usize) -> T> Search<'_, T, F> {
    fn run(&mut self) {
        let s = self.perm.len();
        if s == self.n {
            let better = match &self.best {
                Some((best, _)) => self.key < *best,
                None => true,
            };
            if better {
                self.best = Some((self.key.clone(), self.perm.clone()));
            }
            return;
        }
        for v in 0..self.n {
            if self.used[v] {
                continue;
            }
            self.perm.push(v);
            self.used[v] = true;
            let start = self.key.len();
            shell(&self.perm, s, self.get, &mut self.key);
            let prune = match &self.best {
                Some((best, _)) => self.key[..] > best[..self.key.len()],
                None => false,
            };
            if !prune {
                self.run();
            }
            self.key.truncate(start);
            self.used[v] = false;
            self.perm.pop();
        }
    }
}

pub(crate) fn canonical_by<T: Ord + Clone>(
    n: usize,
    get: impl Fn(usize, usize) -> T,
    degree: impl Fn(usize) -> (T, T, T),
) -> Canonical<T> {
    if n <= EXACT_CANON_MAX {
        let mut search = Search {
            n,
            get: &get,
            best: None,
            perm: Vec::with_capacity(n),
            used: vec![false; n],
            key: Vec::with_capacity(n * n),
        };
        search.run();
        let (key, perm) = search.best.unwrap_or_default();
        Canonical { n, key, perm, exact: true }
    } else {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&v| (degree(v), v));
        let mut key = Vec::with_capacity(n * n);
        for s in 0..n {
            shell(&perm, s, &get, &mut key);
        }
        Canonical { n, key, perm, exact: false }
    }
}

pub fn canonical_form(m: &NNMatrix) -> Result<Canonical<BigUint>> {
    let n = m.ensure_square()?;
    let row_sums = m.row_sums();
    let col_sums = m.transpose().row_sums();
    Ok(canonical_by(
        n,
        |i, j| m.get(i, j).clone(),
        |v| (row_sums[v].clone(), col_sums[v].clone(), m.get(v, v).clone()),
    ))
}
