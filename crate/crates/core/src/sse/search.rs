//! Bounded, exhaustive witness search.
//!
//! Factorizations `A = LR` are enumerated one inner index at a time: at
//! level `c` a column of `L` and a row of `R` are chosen together, and
//! their outer product is subtracted from the running residual `A - LR`,
//! which must stay nonnegative. A residual entry larger than the remaining
//! levels can cover prunes the branch, and when `B` is known every entry
//! of `RL` that becomes determined is compared against it immediately.
//!
//! Budgets count visited `(column, row)` choices. Parallel runs explore
//! disjoint branches independently and then replay the node accounting in
//! sequential order, so the outcome never depends on the mode.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::Value;

use super::canon::canonical_by;
use super::verify::verify_chain;
use super::{SseChain, SseStep};
use crate::error::{Error, Result};
use crate::invariants::{bowen_franks, char_poly, AbelianGroupInvariants, IntPolynomial};
use crate::json;
use crate::matrix::NNMatrix;
use crate::par::{self, Parallelism};

/// Largest accepted `entry_max`; keeps every internal product in `u64`.
pub const ENTRY_MAX_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub inner_dim_max: usize,
    pub entry_max: u64,
    /// Maximum number of visited nodes.
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// The whole space within the bounds was searched without success.
    ExhaustedBounds,
    /// The node budget ran out first.
    BudgetExhausted,
}

impl<T> Outcome<T> {
    pub fn reason(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "found",
            Outcome::ExhaustedBounds => "exhausted bounds",
            Outcome::BudgetExhausted => "budget exhausted",
        }
    }

    pub fn found(&self) -> Option<&T> {
        match self {
            Outcome::Found(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: Outcome<SseStep>,
    pub nodes: u64,
    pub degenerate_input: bool,
}

impl SearchReport {
    pub fn to_json(&self) -> Value {
        let witness = match &self.outcome {
            Outcome::Found(s) => json::object([
                ("L".to_string(), json::nn_matrix(s.l())),
                ("R".to_string(), json::nn_matrix(s.r())),
            ]),
            _ => Value::Null,
        };
        json::object([
            ("degenerate_input".to_string(), Value::Bool(self.degenerate_input)),
            ("nodes".to_string(), Value::from(self.nodes)),
            ("outcome".to_string(), Value::String(self.outcome.reason().into())),
            ("witness".to_string(), witness),
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dedup {
    Exact,
    /// Some state had more than `EXACT_CANON_MAX` vertices, so permuted
    /// copies of a visited matrix may be revisited.
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSearchReport {
    pub outcome: Outcome<SseChain>,
    pub nodes: u64,
    pub visited: usize,
    pub depth_reached: usize,
    pub dedup: Dedup,
    pub degenerate_input: bool,
}

impl ChainSearchReport {
    pub fn to_json(&self) -> Value {
        let chain = match &self.outcome {
            Outcome::Found(c) => super::Certificate::from_chain(c).to_json(),
            _ => Value::Null,
        };
        json::object([
            ("chain".to_string(), chain),
            (
                "dedup".to_string(),
                Value::String(match self.dedup {
                    Dedup::Exact => "exact".into(),
                    Dedup::Heuristic => "heuristic".into(),
                }),
            ),
            ("degenerate_input".to_string(), Value::Bool(self.degenerate_input)),
            ("depth_reached".to_string(), Value::from(self.depth_reached)),
            ("nodes".to_string(), Value::from(self.nodes)),
            ("outcome".to_string(), Value::String(self.outcome.reason().into())),
            ("visited".to_string(), Value::from(self.visited)),
        ])
    }
}

fn check_bounds(bounds: &SearchBounds) -> Result<()> {
    if bounds.entry_max > ENTRY_MAX_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "entry_max {} exceeds the supported maximum {ENTRY_MAX_LIMIT}",
            bounds.entry_max
        )));
    }
    Ok(())
}

/// Entries as `u64` if every one is at most `limit`.
fn to_small(m: &NNMatrix, limit: u64) -> Option<Vec<u64>> {
    m.entries()
        .iter()
        .map(|x| x.to_u64().filter(|&v| v <= limit))
        .collect()
}

fn from_small(rows: usize, cols: usize, data: &[u64]) -> NNMatrix {
    NNMatrix::from_fn(rows, cols, |i, j| BigUint::from(data[i * cols + j]))
}

/// Partial factorization: the chosen columns of `L` and rows of `R`.
#[derive(Clone)]
struct Frame {
    residual: Vec<u64>,
    lcols: Vec<Vec<u64>>,
    rrows: Vec<Vec<u64>>,
}

impl Frame {
    fn new(a: &[u64]) -> Self {
        Frame {
            residual: a.to_vec(),
            lcols: Vec::new(),
            rrows: Vec::new(),
        }
    }

    /// `L` (m x k) and `R` (k x m) row-major.
    fn witnesses(&self, m: usize) -> (Vec<u64>, Vec<u64>) {
        let k = self.lcols.len();
        let mut l = vec![0; m * k];
        for (c, col) in self.lcols.iter().enumerate() {
            for i in 0..m {
                l[i * k + c] = col[i];
            }
        }
        (l, self.rrows.concat())
    }

    /// `RL` (k x k) row-major.
    fn product_rl(&self) -> Vec<u64> {
        let k = self.lcols.len();
        let mut b = vec![0; k * k];
        for c in 0..k {
            for d in 0..k {
                b[c * k + d] = dot(&self.rrows[c], &self.lcols[d]);
            }
        }
        b
    }
}

fn dot(x: &[u64], y: &[u64]) -> u64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

struct Budget {
    used: u64,
    cap: u64,
}

impl Budget {
    fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.cap
    }
}

#[derive(PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    Cap,
}

/// Advances `v` through the box `0..=ub[i]` in lexicographic order.
fn next_in_box(v: &mut [u64], ub: &[u64]) -> bool {
    for i in (0..v.len()).rev() {
        if v[i] < ub[i] {
            v[i] += 1;
            for x in &mut v[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

struct Factorizer<'a> {
    m: usize,
    k: usize,
    e: u64,
    target: Option<&'a [u64]>,
    /// Only keep non-decreasing `(column, row)` sequences and skip zero
    /// pairs. Valid when `B` is free, since reordering the inner index only
    /// permutes `RL`.
    break_symmetry: bool,
}

impl Factorizer<'_> {
    /// Applies the pair to a copy of `frame`; `None` when the branch is
    /// pruned.
    fn extend(&self, frame: &Frame, lc: &[u64], rc: &[u64]) -> Option<Frame> {
        let m = self.m;
        let mut residual = frame.residual.clone();
        for i in 0..m {
            if lc[i] == 0 {
                continue;
            }
            for j in 0..m {
                residual[i * m + j] -= lc[i] * rc[j];
            }
        }
        let remaining = (self.k - frame.lcols.len() - 1) as u64;
        let cover = remaining * self.e * self.e;
        if residual.iter().any(|&x| x > cover) {
            return None;
        }
        let mut next = Frame {
            residual,
            lcols: frame.lcols.clone(),
            rrows: frame.rrows.clone(),
        };
        next.lcols.push(lc.to_vec());
        next.rrows.push(rc.to_vec());
        if let Some(b) = self.target {
            let c = next.lcols.len() - 1;
            let k = self.k;
            for d in 0..=c {
                if b[c * k + d] != dot(&next.rrows[c], &next.lcols[d]) {
                    return None;
                }
                if d < c && b[d * k + c] != dot(&next.rrows[d], &next.lcols[c]) {
                    return None;
                }
            }
        }
        Some(next)
    }

    /// Calls `visit` on every candidate pair at the next level of `frame`.
    fn for_each_pair(&self, frame: &Frame, mut visit: impl FnMut(&[u64], &[u64]) -> Flow) -> Flow {
        let m = self.m;
        let prev = match (frame.lcols.last(), frame.rrows.last()) {
            (Some(l), Some(r)) if self.break_symmetry => Some((l.as_slice(), r.as_slice())),
            _ => None,
        };
        let full = vec![self.e; m];
        let mut lc = vec![0u64; m];
        loop {
            let lc_order = prev.map(|(pl, _)| lc.as_slice().cmp(pl));
            if lc_order != Some(std::cmp::Ordering::Less) {
                let mut ub = vec![self.e; m];
                for (i, &c) in lc.iter().enumerate() {
                    if let Some(c) = std::num::NonZeroU64::new(c) {
                        for (j, u) in ub.iter_mut().enumerate() {
                            *u = (*u).min(frame.residual[i * m + j] / c);
                        }
                    }
                }
                let mut rc = vec![0u64; m];
                loop {
                    let skip = self.break_symmetry
                        && (lc_order == Some(std::cmp::Ordering::Equal)
                            && rc.as_slice() < prev.expect("ordered").1
                            || lc.iter().all(|&x| x == 0) && rc.iter().all(|&x| x == 0));
                    if !skip {
                        match visit(&lc, &rc) {
                            Flow::Continue => {}
                            other => return other,
                        }
                    }
                    if !next_in_box(&mut rc, &ub) {
                        break;
                    }
                }
            }
            if !next_in_box(&mut lc, &full) {
                break;
            }
        }
        Flow::Continue
    }

    /// Depth-first search below `frame`. `sink` returns true to stop.
    fn dfs(&self, frame: &Frame, budget: &mut Budget, sink: &mut dyn FnMut(&Frame) -> bool) -> Flow {
        if frame.lcols.len() == self.k {
            debug_assert!(frame.residual.iter().all(|&x| x == 0));
            return if sink(frame) { Flow::Stop } else { Flow::Continue };
        }
        self.for_each_pair(frame, |lc, rc| {
            if !budget.tick() {
                return Flow::Cap;
            }
            match self.extend(frame, lc, rc) {
                Some(next) => self.dfs(&next, budget, sink),
                None => Flow::Continue,
            }
        })
    }
}

/// Searches for `L` (m x n), `R` (n x m) with `A = LR`, `B = RL`, every
/// entry at most `entry_max`. The inner dimension is `n`, the size of `B`,
/// so nothing is found when `n > inner_dim_max`.
pub fn search_elementary(
    a: &NNMatrix,
    b: &NNMatrix,
    bounds: &SearchBounds,
    mode: Parallelism,
) -> Result<SearchReport> {
    let m = a.ensure_square()?;
    let k = b.ensure_square()?;
    check_bounds(bounds)?;
    let degenerate_input = a.has_zero_row_or_col();
    let report = |outcome, nodes| SearchReport {
        outcome,
        nodes,
        degenerate_input,
    };
    let e = bounds.entry_max;
    if k > bounds.inner_dim_max || a.trace() != b.trace() {
        // tr(LR) = tr(RL) for every witness
        return Ok(report(Outcome::ExhaustedBounds, 0));
    }
    let (Some(a_small), Some(b_small)) = (
        to_small(a, k as u64 * e * e),
        to_small(b, m as u64 * e * e),
    ) else {
        return Ok(report(Outcome::ExhaustedBounds, 0));
    };
    let fac = Factorizer {
        m,
        k,
        e,
        target: Some(&b_small),
        break_symmetry: false,
    };
    let root = Frame::new(&a_small);
    if k == 0 {
        let outcome = if m == 0 || a_small.iter().all(|&x| x == 0) {
            let l = NNMatrix::zeros(m, 0);
            let r = NNMatrix::zeros(0, m);
            Outcome::Found(SseStep::new(l, r)?)
        } else {
            Outcome::ExhaustedBounds
        };
        return Ok(report(outcome, 0));
    }

    // first-level branches, at most budget + 1 of them
    let mut branches: Vec<Option<Frame>> = Vec::new();
    fac.for_each_pair(&root, |lc, rc| {
        branches.push(fac.extend(&root, lc, rc));
        if branches.len() as u64 > bounds.budget {
            Flow::Stop
        } else {
            Flow::Continue
        }
    });

    let cap = bounds.budget;
    let results = par::map(mode, &branches, |branch| {
        let Some(frame) = branch else {
            return (None, 0, false);
        };
        let mut found = None;
        let mut budget = Budget { used: 0, cap };
        let flow = fac.dfs(frame, &mut budget, &mut |f| {
            found = Some(f.witnesses(m));
            true
        });
        (found, budget.used, flow == Flow::Cap)
    });

    let mut used = 0u64;
    for (found, sub, capped) in results {
        used += 1;
        if used > bounds.budget || capped || used + sub > bounds.budget {
            return Ok(report(Outcome::BudgetExhausted, bounds.budget));
        }
        used += sub;
        if let Some((l, r)) = found {
            let step = SseStep::new(from_small(m, k, &l), from_small(k, m, &r))?;
            debug_assert!(step.a() == a && step.b() == b);
            return Ok(report(Outcome::Found(step), used));
        }
    }
    Ok(report(Outcome::ExhaustedBounds, used))
}

struct Node {
    n: usize,
    mat: Vec<u64>,
    // parent id with L (parent.n x n) and R (n x parent.n)
    parent: Option<(usize, Vec<u64>, Vec<u64>)>,
}

/// (inner dim, L, R, RL)
type Neighbor = (usize, Vec<u64>, Vec<u64>, Vec<u64>);

struct Expansion {
    neighbors: Vec<Neighbor>,
    used: u64,
    capped: bool,
}

/// All `RL` over factorizations `A = LR` within the bounds, up to
/// reordering of the inner index.
fn expand(node: &Node, bounds: &SearchBounds, cap: u64) -> Expansion {
    let mut budget = Budget { used: 0, cap };
    let mut neighbors = Vec::new();
    for k in 1..=bounds.inner_dim_max {
        let fac = Factorizer {
            m: node.n,
            k,
            e: bounds.entry_max,
            target: None,
            break_symmetry: true,
        };
        let limit = k as u64 * bounds.entry_max * bounds.entry_max;
        if node.mat.iter().any(|&x| x > limit) {
            continue;
        }
        let flow = fac.dfs(&Frame::new(&node.mat), &mut budget, &mut |f| {
            let (l, r) = f.witnesses(node.n);
            neighbors.push((k, l, r, f.product_rl()));
            false
        });
        if flow == Flow::Cap {
            return Expansion {
                neighbors,
                used: budget.used,
                capped: true,
            };
        }
    }
    Expansion {
        neighbors,
        used: budget.used,
        capped: false,
    }
}

fn canonical_small(n: usize, mat: &[u64]) -> crate::sse::Canonical<u64> {
    let row = |v: usize| mat[v * n..(v + 1) * n].iter().sum::<u64>();
    let col = |v: usize| (0..n).map(|i| mat[i * n + v]).sum::<u64>();
    canonical_by(n, |i, j| mat[i * n + j], |v| (row(v), col(v), mat[v * n + v]))
}

fn invariants_of(m: &NNMatrix) -> Result<(IntPolynomial, AbelianGroupInvariants)> {
    Ok((char_poly(m)?.nonzero_part(), bowen_franks(m)?))
}

/// Breadth-first search for a chain of elementary steps from `A` to `B`.
///
/// States are deduplicated by canonical form. A state is expanded only if
/// its characteristic polynomial (nonzero part) and Bowen–Franks group
/// match those of `B`. When the search reaches a simultaneous permutation
/// of `B`, a final relabeling step is appended; it is not counted against
/// `max_depth`.
pub fn search_chain(
    a: &NNMatrix,
    b: &NNMatrix,
    max_depth: usize,
    bounds: &SearchBounds,
    mode: Parallelism,
) -> Result<ChainSearchReport> {
    let m = a.ensure_square()?;
    let nb = b.ensure_square()?;
    check_bounds(bounds)?;
    let largest = m.max(nb).max(bounds.inner_dim_max);
    let mut report = ChainSearchReport {
        outcome: Outcome::ExhaustedBounds,
        nodes: 0,
        visited: 1,
        depth_reached: 0,
        dedup: if largest <= super::EXACT_CANON_MAX {
            Dedup::Exact
        } else {
            Dedup::Heuristic
        },
        degenerate_input: a.has_zero_row_or_col(),
    };
    if max_depth == 0 {
        return Ok(report);
    }
    if a == b {
        report.outcome = Outcome::Found(SseChain::new(vec![SseStep::identity(a)?])?);
        return Ok(report);
    }
    let target = invariants_of(b)?;
    if invariants_of(a)? != target {
        return Ok(report);
    }
    let (Some(a_small), Some(b_small)) = (to_small(a, u64::MAX >> 24), to_small(b, u64::MAX >> 24)) else {
        return Ok(report);
    };
    let canon_b = canonical_small(nb, &b_small);
    let key_b = (nb, canon_b.key.clone());

    let mut nodes = vec![Node {
        n: m,
        mat: a_small.clone(),
        parent: None,
    }];
    let mut visited: HashMap<(usize, Vec<u64>), usize> = HashMap::new();
    let canon_a = canonical_small(m, &a_small);
    if (m, canon_a.key.clone()) == key_b {
        let chain = finish_chain(&nodes, 0, b, &canon_b)?;
        report.outcome = Outcome::Found(chain);
        return Ok(report);
    }
    visited.insert((m, canon_a.key), 0);
    let mut frontier = vec![0usize];
    let mut used = 0u64;

    for depth in 1..=max_depth {
        report.depth_reached = depth;
        let mut next = Vec::new();
        // chunks bound the work wasted past the budget to one batch
        for batch in frontier.chunks(par::width(mode)) {
            let cap = bounds.budget - used;
            let expansions = par::map(mode, batch, |&id| expand(&nodes[id], bounds, cap));
            for (&id, exp) in batch.iter().zip(expansions) {
                used += exp.used;
                if exp.capped || used > bounds.budget {
                    report.nodes = bounds.budget;
                    report.visited = visited.len();
                    report.outcome = Outcome::BudgetExhausted;
                    return Ok(report);
                }
                for (k, l, r, rl) in exp.neighbors {
                    let canon = canonical_small(k, &rl);
                    let key = (k, canon.key);
                    if visited.contains_key(&key) {
                        continue;
                    }
                    let new_id = nodes.len();
                    visited.insert(key.clone(), new_id);
                    nodes.push(Node {
                        n: k,
                        mat: rl,
                        parent: Some((id, l, r)),
                    });
                    if key == key_b {
                        report.nodes = used;
                        report.visited = visited.len();
                        report.outcome = Outcome::Found(finish_chain(&nodes, new_id, b, &canon_b)?);
                        return Ok(report);
                    }
                    let mat = from_small(k, k, &nodes[new_id].mat);
                    if invariants_of(&mat)? == target {
                        next.push(new_id);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    report.nodes = used;
    report.visited = visited.len();
    Ok(report)
}

/// Chain from the root to `end`, plus a relabeling step onto `b` when
/// `end` is only a permuted copy of it.
fn finish_chain(
    nodes: &[Node],
    end: usize,
    b: &NNMatrix,
    canon_b: &crate::sse::Canonical<u64>,
) -> Result<SseChain> {
    let mut steps = Vec::new();
    let mut cur = end;
    while let Some((parent, l, r)) = &nodes[cur].parent {
        let (pn, n) = (nodes[*parent].n, nodes[cur].n);
        steps.push(SseStep::new(from_small(pn, n, l), from_small(n, pn, r))?);
        cur = *parent;
    }
    steps.reverse();
    let last = &nodes[end];
    let reached = from_small(last.n, last.n, &last.mat);
    if &reached != b {
        let canon_x = canonical_small(last.n, &last.mat);
        let mut perm = vec![0; last.n];
        for (px, pb) in canon_x.perm.iter().zip(&canon_b.perm) {
            perm[*px] = *pb;
        }
        steps.push(SseStep::relabeling(b, &perm)?);
    }
    let start = from_small(nodes[0].n, nodes[0].n, &nodes[0].mat);
    debug_assert!(verify_chain(&steps, &start, b).ok);
    SseChain::new(steps)
}
