use serde_json::Value;

use super::module::TruncatedGradedModule;
use super::qmatrix::QMatrix;
use crate::error::{Error, Result};
use crate::json;
use crate::par::{self, Parallelism};

/// Degree-preserving module homomorphism with one component per
/// `(degree, vertex)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMorphism {
    source: TruncatedGradedModule,
    target: TruncatedGradedModule,
    components: Vec<Vec<QMatrix>>,
}

impl GradedMorphism {
    /// Checks shapes and every commuting square.
    pub fn new(
        source: TruncatedGradedModule,
        target: TruncatedGradedModule,
        components: Vec<Vec<QMatrix>>,
    ) -> Result<Self> {
        if source.quiver() != target.quiver() {
            return Err(Error::QuiverMismatch("source and target quivers differ".into()));
        }
        let n = source.truncation();
        if target.truncation() != n {
            return Err(Error::InvalidModule(format!(
                "truncation degrees differ: {n} and {}",
                target.truncation()
            )));
        }
        let q = source.quiver();
        if components.len() != n + 1 || components.iter().any(|c| c.len() != q.vertex_count()) {
            return Err(Error::InvalidModule("components must cover every degree and vertex".into()));
        }
        for (d, row) in components.iter().enumerate() {
            for (v, c) in row.iter().enumerate() {
                if c.shape() != (target.dim(d, v), source.dim(d, v)) {
                    return Err(Error::InvalidModule(format!(
                        "component at degree {d}, vertex `{}` is {}x{}, expected {}x{}",
                        q.vertices()[v],
                        c.rows(),
                        c.cols(),
                        target.dim(d, v),
                        source.dim(d, v)
                    )));
                }
            }
        }
        let phi = GradedMorphism {
            source,
            target,
            components,
        };
        if let Some((arrow, degree)) = phi.first_failing_square() {
            return Err(Error::NotAMorphism {
                arrow: phi.source.quiver().arrows()[arrow].id.clone(),
                degree,
            });
        }
        Ok(phi)
    }

    fn first_failing_square(&self) -> Option<(usize, usize)> {
        let q = self.source.quiver();
        for a in 0..q.arrow_count() {
            let (u, v) = q.ends(a);
            for d in 0..self.source.truncation() {
                let lhs = self.components[d + 1][v]
                    .checked_mul(self.source.action(a, d))
                    .expect("shapes checked");
                let rhs = self
                    .target
                    .action(a, d)
                    .checked_mul(&self.components[d][u])
                    .expect("shapes checked");
                if lhs != rhs {
                    return Some((a, d));
                }
            }
        }
        None
    }

    /// Whether every commuting square holds.
    pub fn squares_commute(&self) -> bool {
        self.first_failing_square().is_none()
    }

    pub fn identity(m: &TruncatedGradedModule) -> Self {
        let components = m
            .dims()
            .iter()
            .map(|row| row.iter().map(|&x| QMatrix::identity(x)).collect())
            .collect();
        GradedMorphism {
            source: m.clone(),
            target: m.clone(),
            components,
        }
    }

    pub fn zero(source: &TruncatedGradedModule, target: &TruncatedGradedModule) -> Result<Self> {
        let components = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(s, t)| s.iter().zip(t).map(|(&a, &b)| QMatrix::zeros(b, a)).collect())
            .collect();
        GradedMorphism::new(source.clone(), target.clone(), components)
    }

    pub fn source(&self) -> &TruncatedGradedModule {
        &self.source
    }

    pub fn target(&self) -> &TruncatedGradedModule {
        &self.target
    }

    pub fn component(&self, degree: usize, v: usize) -> &QMatrix {
        &self.components[degree][v]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMorphism) -> Result<GradedMorphism> {
        if other.target != self.source {
            return Err(Error::InvalidModule(
                "the inner morphism does not land in the source of the outer one".into(),
            ));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.checked_mul(y).expect("shapes checked"))
                    .collect()
            })
            .collect();
        Ok(GradedMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            components,
        })
    }
}

/// Per-degree, per-vertex kernel and cokernel dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KerCokerTable {
    pub vertices: Vec<String>,
    pub ker: Vec<Vec<usize>>,
    pub coker: Vec<Vec<usize>>,
}

impl KerCokerTable {
    pub fn ker_is_zero(&self) -> bool {
        self.ker.iter().flatten().all(|&x| x == 0)
    }

    /// Degrees `n` with a nonzero cokernel somewhere.
    pub fn coker_support(&self) -> Vec<usize> {
        (0..self.coker.len())
            .filter(|&d| self.coker[d].iter().any(|&x| x > 0))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let table = |rows: &[Vec<usize>]| {
            json::object(rows.iter().enumerate().map(|(d, row)| {
                (
                    d.to_string(),
                    json::object(
                        self.vertices
                            .iter()
                            .zip(row)
                            .map(|(v, &x)| (v.clone(), Value::from(x))),
                    ),
                )
            }))
        };
        json::object([
            ("coker".to_string(), table(&self.coker)),
            ("ker".to_string(), table(&self.ker)),
        ])
    }
}

pub fn kernel_cokernel_dims(phi: &GradedMorphism) -> KerCokerTable {
    kernel_cokernel_dims_with(phi, Parallelism::default())
}

/// Ranks are computed one degree per task.
pub fn kernel_cokernel_dims_with(phi: &GradedMorphism, mode: Parallelism) -> KerCokerTable {
    let rows = par::map(mode, &phi.components, |row| {
        row.iter().map(QMatrix::rank).collect::<Vec<_>>()
    });
    let mut ker = Vec::with_capacity(rows.len());
    let mut coker = Vec::with_capacity(rows.len());
    for (d, ranks) in rows.iter().enumerate() {
        ker.push(
            ranks
                .iter()
                .enumerate()
                .map(|(v, r)| phi.source.dim(d, v) - r)
                .collect(),
        );
        coker.push(
            ranks
                .iter()
                .enumerate()
                .map(|(v, r)| phi.target.dim(d, v) - r)
                .collect(),
        );
    }
    KerCokerTable {
        vertices: phi.source.quiver().vertices().to_vec(),
        ker,
        coker,
    }
}
