use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::Value;

use super::context::FactorizationContext;
use super::module::{free_basis, free_module_shifted, TruncatedGradedModule};
use super::morphism::GradedMorphism;
use super::qmatrix::QMatrix;
use crate::error::{Error, Result};
use crate::json;
use crate::matrix::NNMatrix;
use crate::quiver::Quiver;

fn require_quiver(m: &TruncatedGradedModule, q: &Quiver, side: &str) -> Result<()> {
    if m.quiver() != q {
        return Err(Error::QuiverMismatch(format!("module is not over the {side} quiver of the context")));
    }
    Ok(())
}

/// Offsets of summands inside a direct sum with the given sizes.
fn offsets(sizes: impl IntoIterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut offs = Vec::new();
    let mut total = 0;
    for s in sizes {
        offs.push(total);
        total += s;
    }
    (offs, total)
}

/// `F(M) = R ⊗ M` over `quiver_rl`, without degree shift:
/// `F(M)_n(s) = ⊕_{f: t -> s} M_n(t)`.
pub fn apply_f(ctx: &FactorizationContext, m: &TruncatedGradedModule) -> Result<TruncatedGradedModule> {
    require_quiver(m, ctx.quiver_lr(), "LR")?;
    let n = m.truncation();
    let q = ctx.quiver_rl();
    let re = ctx.r_edges();
    let layout: Vec<Vec<(Vec<usize>, usize)>> = (0..=n)
        .map(|d| {
            (0..q.vertex_count())
                .map(|s| offsets(ctx.r_edges_into(s).iter().map(|&f| m.dim(d, re[f].src))))
                .collect()
        })
        .collect();
    let dims: Vec<Vec<usize>> = layout.iter().map(|row| row.iter().map(|x| x.1).collect()).collect();
    let action = (0..q.arrow_count())
        .map(|alpha| {
            let (e, f) = ctx.rl_pair(alpha);
            let (qv, s) = q.ends(alpha);
            let row_slot = ctx.r_edges_into(s).iter().position(|&x| x == f).expect("f ends at s");
            (0..n)
                .map(|d| {
                    let mut out = QMatrix::zeros(dims[d + 1][s], dims[d][qv]);
                    for (slot, &f2) in ctx.r_edges_into(qv).iter().enumerate() {
                        let beta = ctx.lr_arrow(f2, e).expect("composable pair");
                        out.put_block(layout[d + 1][s].0[row_slot], layout[d][qv].0[slot], m.action(beta, d));
                    }
                    out
                })
                .collect()
        })
        .collect();
    TruncatedGradedModule::new(q.clone(), n, dims, action)
}

/// `F'(N) = L ⊗ N` over `quiver_lr`, shifted up one degree:
/// `F'(N)_n(p) = ⊕_{e: q -> p} N_{n-1}(q)` and `F'(N)_0 = 0`.
pub fn apply_f_back(ctx: &FactorizationContext, nmod: &TruncatedGradedModule) -> Result<TruncatedGradedModule> {
    require_quiver(nmod, ctx.quiver_rl(), "RL")?;
    let n = nmod.truncation();
    let q = ctx.quiver_lr();
    let le = ctx.l_edges();
    let layout: Vec<Vec<(Vec<usize>, usize)>> = (0..=n)
        .map(|d| {
            (0..q.vertex_count())
                .map(|p| match d.checked_sub(1) {
                    Some(prev) => offsets(ctx.l_edges_into(p).iter().map(|&e| nmod.dim(prev, le[e].src))),
                    None => (vec![0; ctx.l_edges_into(p).len()], 0),
                })
                .collect()
        })
        .collect();
    let dims: Vec<Vec<usize>> = layout.iter().map(|row| row.iter().map(|x| x.1).collect()).collect();
    let action = (0..q.arrow_count())
        .map(|beta| {
            let (f, e) = ctx.lr_pair(beta);
            let (t, p) = q.ends(beta);
            let row_slot = ctx.l_edges_into(p).iter().position(|&x| x == e).expect("e ends at p");
            (0..n)
                .map(|d| {
                    let mut out = QMatrix::zeros(dims[d + 1][p], dims[d][t]);
                    if d > 0 {
                        for (slot, &e2) in ctx.l_edges_into(t).iter().enumerate() {
                            let alpha = ctx.rl_arrow(e2, f).expect("composable pair");
                            out.put_block(layout[d + 1][p].0[row_slot], layout[d][t].0[slot], nmod.action(alpha, d - 1));
                        }
                    }
                    out
                })
                .collect()
        })
        .collect();
    TruncatedGradedModule::new(q.clone(), n, dims, action)
}

/// The natural map `τ_M: F'F(M) -> M`. On the summand indexed by
/// (`e: q -> p`, `f: t -> q`) in degree `n` it is the action of the arrow
/// labeled `(f, e)` from `M_{n-1}(t)` to `M_n(p)`.
pub fn tau(ctx: &FactorizationContext, m: &TruncatedGradedModule) -> Result<GradedMorphism> {
    let ffm = apply_f_back(ctx, &apply_f(ctx, m)?)?;
    let q = ctx.quiver_lr();
    let re = ctx.r_edges();
    let le = ctx.l_edges();
    let components = (0..=m.truncation())
        .map(|d| {
            (0..q.vertex_count())
                .map(|p| {
                    let mut c = QMatrix::zeros(m.dim(d, p), ffm.dim(d, p));
                    if d > 0 {
                        let mut col = 0;
                        for &e in ctx.l_edges_into(p) {
                            for &f in ctx.r_edges_into(le[e].src) {
                                let beta = ctx.lr_arrow(f, e).expect("composable pair");
                                c.put_block(0, col, m.action(beta, d - 1));
                                col += m.dim(d - 1, re[f].src);
                            }
                        }
                        debug_assert_eq!(col, ffm.dim(d, p));
                    }
                    c
                })
                .collect()
        })
        .collect();
    GradedMorphism::new(ffm, m.clone(), components)
}

/// `F` on morphisms: identity on the r-edge index, `θ` on each summand.
pub fn apply_f_morphism(ctx: &FactorizationContext, theta: &GradedMorphism) -> Result<GradedMorphism> {
    let source = apply_f(ctx, theta.source())?;
    let target = apply_f(ctx, theta.target())?;
    let re = ctx.r_edges();
    let components = (0..=source.truncation())
        .map(|d| {
            (0..ctx.quiver_rl().vertex_count())
                .map(|s| {
                    let blocks: Vec<&QMatrix> = ctx
                        .r_edges_into(s)
                        .iter()
                        .map(|&f| theta.component(d, re[f].src))
                        .collect();
                    QMatrix::block_diag(&blocks)
                })
                .collect()
        })
        .collect();
    GradedMorphism::new(source, target, components)
}

/// The homomorphism from `kQ e_v` (generator in degree `shift`) to `m`
/// sending the generator to `element ∈ M_shift(v)`.
pub fn hom_from_free(
    m: &TruncatedGradedModule,
    v: &str,
    shift: usize,
    element: &[BigRational],
) -> Result<GradedMorphism> {
    let q = m.quiver();
    let vi = q.require_vertex(v)?;
    let n = m.truncation();
    if shift > n {
        return Err(Error::InvalidArgument(format!("generator degree {shift} exceeds truncation {n}")));
    }
    if element.len() != m.dim(shift, vi) {
        return Err(Error::InvalidArgument(format!(
            "element has {} coordinates, M_{shift}({v}) has dimension {}",
            element.len(),
            m.dim(shift, vi)
        )));
    }
    let free = free_module_shifted(q, v, shift, n)?;
    let basis = free_basis(q, vi, n - shift);
    let mut images: HashMap<Vec<usize>, Vec<BigRational>> = HashMap::new();
    images.insert(Vec::new(), element.to_vec());
    let mut components = vec![Vec::new(); n + 1];
    for (d, row) in components.iter_mut().enumerate() {
        for w in 0..q.vertex_count() {
            let mut c = QMatrix::zeros(m.dim(d, w), free.dim(d, w));
            if let Some(len) = d.checked_sub(shift) {
                for (col, path) in basis[len][w].iter().enumerate() {
                    if !images.contains_key(path) {
                        let (&last, prefix) = path.split_last().expect("trivial paths are seeded");
                        let prev = &images[prefix];
                        let img = m.action(last, d - 1).mul_vec(prev);
                        images.insert(path.clone(), img);
                    }
                    for (r, x) in images[path].iter().enumerate() {
                        c.set(r, col, x.clone());
                    }
                }
            }
            row.push(c);
        }
    }
    GradedMorphism::new(free, m.clone(), components)
}

pub fn hilbert(m: &TruncatedGradedModule) -> Vec<Vec<usize>> {
    m.dims().to_vec()
}

/// Dimension of `M_n(p)` modulo the images of all arrows into `p`; zero
/// in degree 0 means nothing is subtracted.
pub fn top_dims(m: &TruncatedGradedModule) -> Vec<Vec<usize>> {
    let q = m.quiver();
    (0..=m.truncation())
        .map(|d| {
            (0..q.vertex_count())
                .map(|p| {
                    if d == 0 {
                        return m.dim(0, p);
                    }
                    let mats: Vec<&QMatrix> = q.in_arrows(p).iter().map(|&a| m.action(a, d - 1)).collect();
                    m.dim(d, p) - QMatrix::hstack(m.dim(d, p), &mats).rank()
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaMismatch {
    pub degree: usize,
    pub vertex: String,
    pub functor_side: usize,
    pub arrow_side: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaReport {
    pub ok: bool,
    pub checked: usize,
    pub mismatches: Vec<EtaMismatch>,
}

impl EtaReport {
    pub fn to_json(&self) -> Value {
        json::object([
            ("checked".to_string(), Value::from(self.checked)),
            (
                "mismatches".to_string(),
                Value::Array(
                    self.mismatches
                        .iter()
                        .map(|x| {
                            json::object([
                                ("arrow_side".to_string(), Value::from(x.arrow_side)),
                                ("degree".to_string(), Value::from(x.degree)),
                                ("functor_side".to_string(), Value::from(x.functor_side)),
                                ("vertex".to_string(), Value::String(x.vertex.clone())),
                            ])
                        })
                        .collect(),
                ),
            ),
            ("ok".to_string(), Value::Bool(self.ok)),
        ])
    }
}

/// Compares `dim (F'F M)_n(p)` with the sum of `dim M_{n-1}(t)` over the
/// arrows `t -> p`, for `1 <= n <= N`.
pub fn check_eta_dimensions(ctx: &FactorizationContext, m: &TruncatedGradedModule) -> Result<EtaReport> {
    let ffm = apply_f_back(ctx, &apply_f(ctx, m)?)?;
    let q = ctx.quiver_lr();
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for d in 1..=m.truncation() {
        for p in 0..q.vertex_count() {
            let arrow_side: usize = q.in_arrows(p).iter().map(|&a| m.dim(d - 1, q.src(a))).sum();
            checked += 1;
            if ffm.dim(d, p) != arrow_side {
                mismatches.push(EtaMismatch {
                    degree: d,
                    vertex: q.vertices()[p].clone(),
                    functor_side: ffm.dim(d, p),
                    arrow_side,
                });
            }
        }
    }
    Ok(EtaReport {
        ok: mismatches.is_empty(),
        checked,
        mismatches,
    })
}

/// Applies `F` along the chain, moving the module onto each context's
/// `quiver_lr` first. Consecutive contexts must satisfy
/// `R_k L_k = L_{k+1} R_{k+1}`.
pub fn apply_chain(ctxs: &[FactorizationContext], m: &TruncatedGradedModule) -> Result<TruncatedGradedModule> {
    for (k, w) in ctxs.windows(2).enumerate() {
        if w[0].quiver_rl().incidence_matrix() != w[1].quiver_lr().incidence_matrix() {
            return Err(Error::IncompatibleChain {
                index: k + 1,
                reason: "RL of this context differs from LR of the next".into(),
            });
        }
    }
    let mut cur = m.clone();
    for (k, ctx) in ctxs.iter().enumerate() {
        let moved = cur.relabeled_onto(ctx.quiver_lr()).map_err(|e| Error::IncompatibleChain {
            index: k,
            reason: e.to_string(),
        })?;
        cur = apply_f(ctx, &moved)?;
    }
    Ok(cur)
}

/// `mat · dims` for a dimension vector.
pub fn apply_to_dims(mat: &NNMatrix, dims: &[usize]) -> Vec<BigUint> {
    let v: Vec<BigUint> = dims.iter().map(|&x| BigUint::from(x)).collect();
    mat.mul_vec(&v).expect("dimension vector length matches")
}
