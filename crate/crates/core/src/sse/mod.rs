//! Elementary strong shift equivalences, chains of them, and shift
//! equivalence witnesses.
//!
//! An elementary strong shift equivalence between square matrices `A`
//! (m x m) and `B` (n x n) is a pair of nonnegative matrices `L` (m x n),
//! `R` (n x m) with `A = LR` and `B = RL`.

mod canon;
mod cert;
mod search;
mod verify;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::matrix::NNMatrix;

pub use canon::{canonical_form, Canonical, EXACT_CANON_MAX};
pub use cert::{check_certificate, parse_certificate, Certificate, CertificateCheck, CertificateFailure};
pub use search::{
    search_chain, search_elementary, ChainSearchReport, Dedup, Outcome, SearchBounds, SearchReport,
};
pub use verify::{
    verify_chain, verify_elementary, verify_shift_equivalence, ChainReport, EntryMismatch,
    EquationCheck, SeReport, VerifyReport,
};

/// A verified elementary step `A = LR`, `B = RL`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SseStep {
    l: NNMatrix,
    r: NNMatrix,
    a: NNMatrix,
    b: NNMatrix,
}

impl SseStep {
    /// Builds the step from its witnesses; `A` and `B` are the two
    /// products, so the defining equalities hold by construction.
    pub fn new(l: NNMatrix, r: NNMatrix) -> Result<Self> {
        if l.rows() != r.cols() || l.cols() != r.rows() {
            return Err(Error::ShapeMismatch(format!(
                "L is {}x{} but R is {}x{}; expected R to be {}x{}",
                l.rows(),
                l.cols(),
                r.rows(),
                r.cols(),
                l.cols(),
                l.rows()
            )));
        }
        let a = &l * &r;
        let b = &r * &l;
        Ok(SseStep { l, r, a, b })
    }

    /// `A = A * I`, `A = I * A`.
    pub fn identity(a: &NNMatrix) -> Result<Self> {
        let n = a.ensure_square()?;
        SseStep::new(a.clone(), NNMatrix::identity(n))
    }

    /// Step from `X = S B S^T` to `B`, where `S[i][perm[i]] = 1`, i.e.
    /// `X[i][j] = B[perm[i]][perm[j]]`.
    pub fn relabeling(b: &NNMatrix, perm: &[usize]) -> Result<Self> {
        let n = b.ensure_square()?;
        if perm.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "permutation of length {} for a {n}x{n} matrix",
                perm.len()
            )));
        }
        let s = NNMatrix::from_fn(n, n, |i, j| BigUint::from(u32::from(perm[i] == j)));
        SseStep::new(&s * b, s.transpose())
    }

    pub fn l(&self) -> &NNMatrix {
        &self.l
    }

    pub fn r(&self) -> &NNMatrix {
        &self.r
    }

    /// `LR`
    pub fn a(&self) -> &NNMatrix {
        &self.a
    }

    /// `RL`
    pub fn b(&self) -> &NNMatrix {
        &self.b
    }

    pub fn inner_dim(&self) -> usize {
        self.l.cols()
    }
}

/// A nonempty sequence of steps with `steps[i].b() == steps[i + 1].a()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SseChain {
    steps: Vec<SseStep>,
}

impl SseChain {
    pub fn new(steps: Vec<SseStep>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::IncompatibleChain {
                index: 0,
                reason: "a chain needs at least one step".into(),
            });
        }
        for (i, w) in steps.windows(2).enumerate() {
            if w[0].b() != w[1].a() {
                return Err(Error::IncompatibleChain {
                    index: i + 1,
                    reason: format!("step {i} ends at {} but step {} starts at {}", w[0].b(), i + 1, w[1].a()),
                });
            }
        }
        Ok(SseChain { steps })
    }

    pub fn steps(&self) -> &[SseStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> &NNMatrix {
        self.steps[0].a()
    }

    pub fn end(&self) -> &NNMatrix {
        self.steps[self.steps.len() - 1].b()
    }
}

/// Candidate shift equivalence of lag `lag`: `AL = LB`, `RA = BR`,
/// `A^lag = LR`, `B^lag = RL`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeWitness {
    pub l: NNMatrix,
    pub r: NNMatrix,
    pub lag: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nn(rows: &[&[u64]]) -> NNMatrix {
        NNMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn step_products() {
        let s = SseStep::new(nn(&[&[1], &[1]]), nn(&[&[1, 1]])).unwrap();
        assert_eq!(s.a(), &nn(&[&[1, 1], &[1, 1]]));
        assert_eq!(s.b(), &nn(&[&[2]]));
        assert!(SseStep::new(nn(&[&[1], &[1]]), nn(&[&[1]])).is_err());
    }

    #[test]
    fn relabeling_step() {
        let b = nn(&[&[1, 6], &[1, 1]]);
        let perm = [1, 0];
        let s = SseStep::relabeling(&b, &perm).unwrap();
        assert_eq!(s.b(), &b);
        assert_eq!(s.a(), &b.permute(&perm));
    }

    #[test]
    fn chain_compatibility() {
        let a = nn(&[&[1, 1], &[1, 1]]);
        let s1 = SseStep::identity(&a).unwrap();
        let s2 = SseStep::new(nn(&[&[1], &[1]]), nn(&[&[1, 1]])).unwrap();
        let chain = SseChain::new(vec![s1.clone(), s2.clone()]).unwrap();
        assert_eq!(chain.end(), &nn(&[&[2]]));
        assert!(matches!(
            SseChain::new(vec![s2, s1]),
            Err(Error::IncompatibleChain { index: 1, .. })
        ));
        assert!(SseChain::new(vec![]).is_err());
    }
}
