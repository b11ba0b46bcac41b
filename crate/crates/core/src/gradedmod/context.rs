use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::matrix::NNMatrix;
use crate::quiver::{Arrow, Quiver, MAX_ARROWS};

/// One copy of a bimodule basis element, as an edge between vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleEdge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// The bimodules `L` and `R` of a factorization `C = LR`, together with
/// the quivers of `LR` and `RL` whose arrows are the composable pairs.
///
/// `L` is i x j and contributes `L[p][q]` edges `q -> p` (named `l1, l2,
/// ...`); `R` is j x i and contributes `R[s][t]` edges `t -> s` (named
/// `r1, ...`). Edges are numbered in order of `(dst, src, copy)`. The
/// arrow of `quiver_lr` for the pair (`f: t -> q`, `e: q -> p`) runs
/// `t -> p` and is named `ef`; the arrow of `quiver_rl` for (`e: q -> p`,
/// `f: p -> s`) runs `q -> s` and is named `fe`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationContext {
    l: NNMatrix,
    r: NNMatrix,
    quiver_lr: Quiver,
    quiver_rl: Quiver,
    l_edges: Vec<BimoduleEdge>,
    r_edges: Vec<BimoduleEdge>,
    /// `(r-edge, l-edge)` for each arrow of `quiver_lr`.
    lr_pairs: Vec<(usize, usize)>,
    /// `(l-edge, r-edge)` for each arrow of `quiver_rl`.
    rl_pairs: Vec<(usize, usize)>,
    lr_lookup: HashMap<(usize, usize), usize>,
    rl_lookup: HashMap<(usize, usize), usize>,
    l_into: Vec<Vec<usize>>,
    r_into: Vec<Vec<usize>>,
}

fn edges(m: &NNMatrix, prefix: char) -> Result<Vec<BimoduleEdge>> {
    let mut out = Vec::new();
    for dst in 0..m.rows() {
        for src in 0..m.cols() {
            let count = m
                .get(dst, src)
                .to_usize()
                .filter(|&c| c <= MAX_ARROWS)
                .ok_or_else(|| Error::InvalidArgument(format!("entry {} is too large", m.get(dst, src))))?;
            for _ in 0..count {
                out.push(BimoduleEdge {
                    id: format!("{prefix}{}", out.len() + 1),
                    src,
                    dst,
                });
            }
        }
    }
    Ok(out)
}

fn into_lists(edges: &[BimoduleEdge], n: usize) -> Vec<Vec<usize>> {
    let mut lists = vec![Vec::new(); n];
    for (k, e) in edges.iter().enumerate() {
        lists[e.dst].push(k);
    }
    lists
}

fn vertex_names(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("v{k}")).collect()
}

pub fn build_context(l: &NNMatrix, r: &NNMatrix) -> Result<FactorizationContext> {
    let (i, j) = l.shape();
    if r.shape() != (j, i) {
        return Err(Error::ShapeMismatch(format!(
            "L is {i}x{j}, so R must be {j}x{i}, got {}x{}",
            r.rows(),
            r.cols()
        )));
    }
    let l_edges = edges(l, 'l')?;
    let r_edges = edges(r, 'r')?;
    let l_into = into_lists(&l_edges, i);
    let r_into = into_lists(&r_edges, j);
    let vi = vertex_names(i);
    let vj = vertex_names(j);

    let mut lr_arrows = Vec::new();
    let mut lr_pairs = Vec::new();
    for (ei, e) in l_edges.iter().enumerate() {
        for &fi in &r_into[e.src] {
            let f = &r_edges[fi];
            lr_arrows.push(Arrow::new(format!("{}{}", e.id, f.id), vi[f.src].clone(), vi[e.dst].clone()));
            lr_pairs.push((fi, ei));
        }
    }
    let mut rl_arrows = Vec::new();
    let mut rl_pairs = Vec::new();
    for (fi, f) in r_edges.iter().enumerate() {
        for &ei in &l_into[f.src] {
            let e = &l_edges[ei];
            rl_arrows.push(Arrow::new(format!("{}{}", f.id, e.id), vj[e.src].clone(), vj[f.dst].clone()));
            rl_pairs.push((ei, fi));
        }
    }
    if lr_arrows.len() > MAX_ARROWS || rl_arrows.len() > MAX_ARROWS {
        return Err(Error::InvalidArgument(format!("products describe more than {MAX_ARROWS} arrows")));
    }
    let quiver_lr = Quiver::new(vi, lr_arrows)?;
    let quiver_rl = Quiver::new(vj, rl_arrows)?;
    let lr_lookup = lr_pairs.iter().enumerate().map(|(a, &p)| (p, a)).collect();
    let rl_lookup = rl_pairs.iter().enumerate().map(|(a, &p)| (p, a)).collect();
    Ok(FactorizationContext {
        l: l.clone(),
        r: r.clone(),
        quiver_lr,
        quiver_rl,
        l_edges,
        r_edges,
        lr_pairs,
        rl_pairs,
        lr_lookup,
        rl_lookup,
        l_into,
        r_into,
    })
}

impl FactorizationContext {
    pub fn l(&self) -> &NNMatrix {
        &self.l
    }

    pub fn r(&self) -> &NNMatrix {
        &self.r
    }

    /// Quiver with incidence `LR` on `v1..vi`.
    pub fn quiver_lr(&self) -> &Quiver {
        &self.quiver_lr
    }

    /// Quiver with incidence `RL` on `v1..vj`.
    pub fn quiver_rl(&self) -> &Quiver {
        &self.quiver_rl
    }

    pub fn l_edges(&self) -> &[BimoduleEdge] {
        &self.l_edges
    }

    pub fn r_edges(&self) -> &[BimoduleEdge] {
        &self.r_edges
    }

    /// `(r-edge, l-edge)` labeling arrow `a` of `quiver_lr`.
    pub fn lr_pair(&self, a: usize) -> (usize, usize) {
        self.lr_pairs[a]
    }

    /// `(l-edge, r-edge)` labeling arrow `a` of `quiver_rl`.
    pub fn rl_pair(&self, a: usize) -> (usize, usize) {
        self.rl_pairs[a]
    }

    /// Arrow of `quiver_lr` for the composable pair `(f, e)`.
    pub fn lr_arrow(&self, f: usize, e: usize) -> Option<usize> {
        self.lr_lookup.get(&(f, e)).copied()
    }

    /// Arrow of `quiver_rl` for the composable pair `(e, f)`.
    pub fn rl_arrow(&self, e: usize, f: usize) -> Option<usize> {
        self.rl_lookup.get(&(e, f)).copied()
    }

    /// l-edges ending at `p`, in edge order.
    pub fn l_edges_into(&self, p: usize) -> &[usize] {
        &self.l_into[p]
    }

    /// r-edges ending at `s`, in edge order.
    pub fn r_edges_into(&self, s: usize) -> &[usize] {
        &self.r_into[s]
    }

    /// The context with the roles of `L` and `R` exchanged.
    pub fn mirror(&self) -> FactorizationContext {
        build_context(&self.r, &self.l).expect("the mirrored shapes are valid")
    }
}
