use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::qmatrix::{parse_rational, QMatrix};
use crate::error::{Error, Result};
use crate::json;
use crate::quiver::Quiver;

/// A graded module over the path algebra, kept in degrees `0..=N`.
///
/// `dims[n][v]` is the dimension of `M_n(v)`, and for each arrow
/// `a: u -> v` and degree `n < N`, `action[a][n]` maps `M_n(u)` to
/// `M_{n+1}(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedGradedModule {
    quiver: Quiver,
    n: usize,
    dims: Vec<Vec<usize>>,
    action: Vec<Vec<QMatrix>>,
    generated_in: Option<usize>,
}

impl TruncatedGradedModule {
    pub fn new(quiver: Quiver, n: usize, dims: Vec<Vec<usize>>, action: Vec<Vec<QMatrix>>) -> Result<Self> {
        let nv = quiver.vertex_count();
        if dims.len() != n + 1 || dims.iter().any(|d| d.len() != nv) {
            return Err(Error::InvalidModule(format!(
                "dims must list {} degrees of {nv} vertices",
                n + 1
            )));
        }
        if action.len() != quiver.arrow_count() {
            return Err(Error::InvalidModule(format!(
                "{} action lists for {} arrows",
                action.len(),
                quiver.arrow_count()
            )));
        }
        for (a, per_degree) in action.iter().enumerate() {
            let (u, v) = quiver.ends(a);
            if per_degree.len() != n {
                return Err(Error::InvalidModule(format!(
                    "arrow `{}` has {} action matrices, expected {n}",
                    quiver.arrows()[a].id,
                    per_degree.len()
                )));
            }
            for (d, m) in per_degree.iter().enumerate() {
                if m.shape() != (dims[d + 1][v], dims[d][u]) {
                    return Err(Error::InvalidModule(format!(
                        "arrow `{}` in degree {d} is {}x{}, expected {}x{}",
                        quiver.arrows()[a].id,
                        m.rows(),
                        m.cols(),
                        dims[d + 1][v],
                        dims[d][u]
                    )));
                }
            }
        }
        Ok(TruncatedGradedModule {
            quiver,
            n,
            dims,
            action,
            generated_in: None,
        })
    }

    /// Records that the module is generated in degrees `<= g`.
    pub fn with_generation_degree(mut self, g: usize) -> Self {
        self.generated_in = Some(g);
        self
    }

    pub fn zero(quiver: &Quiver, n: usize) -> Self {
        let dims = vec![vec![0; quiver.vertex_count()]; n + 1];
        let action = vec![vec![QMatrix::zeros(0, 0); n]; quiver.arrow_count()];
        TruncatedGradedModule::new(quiver.clone(), n, dims, action)
            .expect("zero data has valid shapes")
            .with_generation_degree(0)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Truncation degree `N`.
    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn dim(&self, degree: usize, v: usize) -> usize {
        self.dims[degree][v]
    }

    pub fn action(&self, arrow: usize, degree: usize) -> &QMatrix {
        &self.action[arrow][degree]
    }

    pub fn generated_in(&self) -> Option<usize> {
        self.generated_in
    }

    pub fn total_dim(&self, degree: usize) -> usize {
        self.dims[degree].iter().sum()
    }

    /// `{"N":..,"action":{arrow:{degree:[[..]]}},"dims":{degree:{vertex:n}},"quiver":..}`
    pub fn to_json(&self) -> Value {
        let dims = json::object(self.dims.iter().enumerate().map(|(d, row)| {
            (
                d.to_string(),
                json::object(
                    self.quiver
                        .vertices()
                        .iter()
                        .zip(row)
                        .map(|(v, &x)| (v.clone(), Value::from(x))),
                ),
            )
        }));
        let action = json::object(self.quiver.arrows().iter().enumerate().map(|(a, arrow)| {
            (
                arrow.id.clone(),
                json::object(
                    self.action[a]
                        .iter()
                        .enumerate()
                        .map(|(d, m)| (d.to_string(), m.to_json())),
                ),
            )
        }));
        let mut entries = vec![
            ("N".to_string(), Value::from(self.n)),
            ("action".to_string(), action),
            ("dims".to_string(), dims),
            ("quiver".to_string(), self.quiver.to_json()),
        ];
        if let Some(g) = self.generated_in {
            entries.push(("generated_in".to_string(), Value::from(g)));
        }
        json::object(entries)
    }

    pub fn from_json(v: &Value, loc: &str) -> Result<Self> {
        let obj = json::as_object(v, loc)?;
        let quiver = Quiver::from_json(json::field(obj, "quiver", loc)?, &format!("{loc}.quiver"))?;
        let n = json::parse_usize(json::field(obj, "N", loc)?, &format!("{loc}.N"))?;
        let dloc = format!("{loc}.dims");
        let dobj = json::as_object(json::field(obj, "dims", loc)?, &dloc)?;
        let mut dims = vec![vec![0usize; quiver.vertex_count()]; n + 1];
        for (key, row) in dobj {
            let kloc = format!("{dloc}.{key}");
            let d: usize = key
                .parse()
                .ok()
                .filter(|&d| d <= n)
                .ok_or_else(|| Error::format(&kloc, format!("degree must be in 0..={n}")))?;
            for (vertex, x) in json::as_object(row, &kloc)? {
                let vloc = format!("{kloc}.{vertex}");
                let vi = quiver
                    .vertex_index(vertex)
                    .ok_or_else(|| Error::format(&vloc, format!("unknown vertex `{vertex}`")))?;
                dims[d][vi] = json::parse_usize(x, &vloc)?;
            }
        }
        let aloc = format!("{loc}.action");
        let aobj = match obj.get("action") {
            Some(x) => Some(json::as_object(x, &aloc)?),
            None => None,
        };
        if let Some(aobj) = aobj {
            for key in aobj.keys() {
                if quiver.arrow_index(key).is_none() {
                    return Err(Error::format(format!("{aloc}.{key}"), format!("unknown arrow `{key}`")));
                }
            }
        }
        let mut action = Vec::with_capacity(quiver.arrow_count());
        for (a, arrow) in quiver.arrows().iter().enumerate() {
            let (u, w) = quiver.ends(a);
            let per = aobj.and_then(|o| o.get(&arrow.id));
            let per = match per {
                Some(p) => Some(json::as_object(p, &format!("{aloc}.{}", arrow.id))?),
                None => None,
            };
            let mut mats = Vec::with_capacity(n);
            for d in 0..n {
                let shape = (dims[d + 1][w], dims[d][u]);
                let m = match per.and_then(|p| p.get(&d.to_string())) {
                    Some(x) => QMatrix::from_json(x, &format!("{aloc}.{}.{d}", arrow.id), shape.0, shape.1)?,
                    None if shape.0 == 0 || shape.1 == 0 => QMatrix::zeros(shape.0, shape.1),
                    None => {
                        return Err(Error::format(
                            format!("{aloc}.{}", arrow.id),
                            format!("missing action matrix for degree {d}"),
                        ))
                    }
                };
                mats.push(m);
            }
            action.push(mats);
        }
        let mut m = TruncatedGradedModule::new(quiver, n, dims, action)?;
        if let Some(g) = obj.get("generated_in") {
            m.generated_in = Some(json::parse_usize(g, &format!("{loc}.generated_in"))?);
        }
        Ok(m)
    }

    /// The same module over a quiver with the same incidence matrix and
    /// vertex order; arrows are matched by `(src, dst)` and order of
    /// occurrence.
    pub fn relabeled_onto(&self, target: &Quiver) -> Result<Self> {
        if target == &self.quiver {
            return Ok(self.clone());
        }
        if target.vertex_count() != self.quiver.vertex_count()
            || target.incidence_matrix() != self.quiver.incidence_matrix()
        {
            return Err(Error::QuiverMismatch(
                "target quiver has a different incidence matrix".into(),
            ));
        }
        let mut pools: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for a in (0..self.quiver.arrow_count()).rev() {
            pools.entry(self.quiver.ends(a)).or_default().push(a);
        }
        let action = (0..target.arrow_count())
            .map(|b| {
                let a = pools
                    .get_mut(&target.ends(b))
                    .and_then(Vec::pop)
                    .expect("equal incidence matrices");
                self.action[a].clone()
            })
            .collect();
        let mut m = TruncatedGradedModule::new(target.clone(), self.n, self.dims.clone(), action)?;
        m.generated_in = self.generated_in;
        Ok(m)
    }
}

/// Paths from `v` of each length up to `max_len`, grouped by end vertex
/// in path enumeration order.
pub(crate) fn free_basis(q: &Quiver, v: usize, max_len: usize) -> Vec<Vec<Vec<Vec<usize>>>> {
    (0..=max_len)
        .map(|len| {
            let mut by_end = vec![Vec::new(); q.vertex_count()];
            for (start, arrows) in q.path_indices(len) {
                if start == v {
                    let end = arrows.last().map_or(v, |&a| q.dst(a));
                    by_end[end].push(arrows);
                }
            }
            by_end
        })
        .collect()
}

/// `kQ e_v` with its generator placed in degree `shift`, truncated at `n`.
pub fn free_module_shifted(q: &Quiver, v: &str, shift: usize, n: usize) -> Result<TruncatedGradedModule> {
    let vi = q.require_vertex(v)?;
    let basis = free_basis(q, vi, n.saturating_sub(shift));
    let nv = q.vertex_count();
    let at = |d: usize| -> Option<&Vec<Vec<Vec<usize>>>> { d.checked_sub(shift).map(|len| &basis[len]) };
    let dims: Vec<Vec<usize>> = (0..=n)
        .map(|d| match at(d) {
            Some(b) => b.iter().map(Vec::len).collect(),
            None => vec![0; nv],
        })
        .collect();
    let index: Vec<HashMap<&[usize], usize>> = (0..=n)
        .map(|d| match at(d) {
            Some(b) => b
                .iter()
                .flat_map(|paths| paths.iter().enumerate().map(|(k, p)| (p.as_slice(), k)))
                .collect(),
            None => HashMap::new(),
        })
        .collect();
    let action = (0..q.arrow_count())
        .map(|a| {
            let (u, w) = q.ends(a);
            (0..n)
                .map(|d| {
                    let mut m = QMatrix::zeros(dims[d + 1][w], dims[d][u]);
                    if let Some(b) = at(d) {
                        for (col, p) in b[u].iter().enumerate() {
                            let mut ap = p.clone();
                            ap.push(a);
                            let row = index[d + 1][ap.as_slice()];
                            m.set(row, col, BigRational::from_integer(1.into()));
                        }
                    }
                    m
                })
                .collect()
        })
        .collect();
    Ok(TruncatedGradedModule::new(q.clone(), n, dims, action)?.with_generation_degree(shift))
}

/// `kQ e_v` in its path basis, truncated at degree `n`.
pub fn free_module(q: &Quiver, v: &str, n: usize) -> Result<TruncatedGradedModule> {
    free_module_shifted(q, v, 0, n)
}

/// One-dimensional at `v` in degree 0, zero elsewhere.
pub fn simple_module(q: &Quiver, v: &str, n: usize) -> Result<TruncatedGradedModule> {
    let vi = q.require_vertex(v)?;
    let mut dims = vec![vec![0; q.vertex_count()]; n + 1];
    dims[0][vi] = 1;
    let action = (0..q.arrow_count())
        .map(|a| {
            let (u, w) = q.ends(a);
            (0..n).map(|d| QMatrix::zeros(dims[d + 1][w], dims[d][u])).collect()
        })
        .collect();
    Ok(TruncatedGradedModule::new(q.clone(), n, dims, action)?.with_generation_degree(0))
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::from_integer(BigInt::from(rng.gen_range(-2i64..=2)))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| small_rational(rng))
}

/// Random dimensions up to `max_dim` and random actions with entries in
/// `-2..=2`, fully determined by `seed`.
pub fn random_module(q: &Quiver, n: usize, seed: u64, max_dim: usize) -> TruncatedGradedModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<Vec<usize>> = (0..=n)
        .map(|_| (0..q.vertex_count()).map(|_| rng.gen_range(0..=max_dim)).collect())
        .collect();
    let action = (0..q.arrow_count())
        .map(|a| {
            let (u, w) = q.ends(a);
            (0..n).map(|d| random_matrix(&mut rng, dims[d + 1][w], dims[d][u])).collect()
        })
        .collect();
    TruncatedGradedModule::new(q.clone(), n, dims, action).expect("shapes follow dims")
}

/// A random module generated in degrees `<= g`: arbitrary data up to
/// degree `g`, and above it each `M_n(v)` is the span of the images of the
/// arrows into `v`.
pub fn random_generated_module(q: &Quiver, n: usize, g: usize, seed: u64, max_dim: usize) -> TruncatedGradedModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = q.vertex_count();
    let mut dims: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
    let mut action: Vec<Vec<QMatrix>> = vec![Vec::with_capacity(n); q.arrow_count()];
    let into: Vec<Vec<usize>> = (0..nv).map(|v| q.in_arrows(v)).collect();
    for d in 0..=n {
        if d <= g {
            dims.push((0..nv).map(|_| rng.gen_range(0..=max_dim)).collect());
            if d > 0 {
                for (a, acts) in action.iter_mut().enumerate() {
                    let (u, w) = q.ends(a);
                    acts.push(random_matrix(&mut rng, dims[d][w], dims[d - 1][u]));
                }
            }
            continue;
        }
        let mut row = vec![0; nv];
        let mut blocks: Vec<Option<QMatrix>> = vec![None; q.arrow_count()];
        for v in 0..nv {
            let widths: Vec<usize> = into[v].iter().map(|&a| dims[d - 1][q.src(a)]).collect();
            let total: usize = widths.iter().sum();
            let target = rng.gen_range(0..=max_dim.min(total));
            // a surjection onto M_d(v) from the sum of the sources
            let mut m = random_matrix(&mut rng, target, total);
            let mut tries = 0;
            while m.rank() < target {
                tries += 1;
                m = if tries < 8 {
                    random_matrix(&mut rng, target, total)
                } else {
                    QMatrix::from_fn(target, total, |i, j| {
                        BigRational::from_integer(BigInt::from(u8::from(i == j)))
                    })
                };
            }
            row[v] = target;
            let mut c0 = 0;
            for (&a, &wd) in into[v].iter().zip(&widths) {
                blocks[a] = Some(QMatrix::from_fn(target, wd, |i, j| m.get(i, c0 + j).clone()));
                c0 += wd;
            }
        }
        dims.push(row);
        for (a, acts) in action.iter_mut().enumerate() {
            let (u, w) = q.ends(a);
            acts.push(
                blocks[a]
                    .take()
                    .unwrap_or_else(|| QMatrix::zeros(dims[d][w], dims[d - 1][u])),
            );
        }
    }
    TruncatedGradedModule::new(q.clone(), n, dims, action)
        .expect("shapes follow dims")
        .with_generation_degree(g.min(n))
}

/// Parses a vector of rationals.
pub fn parse_vector(v: &Value, loc: &str) -> Result<Vec<BigRational>> {
    json::as_array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_rational(x, &format!("{loc}[{i}]")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q51() -> Quiver {
        Quiver::build(&["1", "2"], &[("u", "2", "1"), ("v", "1", "2"), ("w", "1", "1")])
    }

    #[test]
    fn free_module_dims() {
        let m = free_module(&q51(), "1", 3).unwrap();
        assert_eq!(m.dims(), &[vec![1, 0], vec![1, 1], vec![2, 1], vec![3, 2]]);
        let qb = Quiver::build(&["1"], &[("x", "1", "1"), ("y", "1", "1")]);
        let m = free_module(&qb, "1", 3).unwrap();
        assert_eq!(m.dims(), &[vec![1], vec![2], vec![4], vec![8]]);
        assert!(free_module(&qb, "9", 3).is_err());
    }

    #[test]
    fn free_module_actions_are_injective_on_paths() {
        let m = free_module(&q51(), "1", 4).unwrap();
        for d in 0..4 {
            for v in 0..2 {
                let into = m.quiver().in_arrows(v);
                let mats: Vec<&QMatrix> = into.iter().map(|&a| m.action(a, d)).collect();
                let stacked = QMatrix::hstack(m.dim(d + 1, v), &mats);
                assert_eq!(stacked.rank(), m.dim(d + 1, v));
            }
        }
    }

    #[test]
    fn shifted_free_module() {
        let m = free_module_shifted(&q51(), "2", 2, 4).unwrap();
        assert_eq!(m.dims(), &[vec![0, 0], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn simple_module_dims() {
        let m = simple_module(&q51(), "2", 3).unwrap();
        assert_eq!(m.dims().iter().flatten().sum::<usize>(), 1);
        assert_eq!(m.dim(0, 1), 1);
    }

    #[test]
    fn random_modules_are_reproducible() {
        let q = q51();
        assert_eq!(random_module(&q, 4, 9, 3), random_module(&q, 4, 9, 3));
        let distinct: std::collections::HashSet<String> = (0..100)
            .map(|s| json::to_string(&random_module(&q, 3, s, 2).to_json()))
            .collect();
        assert!(distinct.len() > 90);
    }

    #[test]
    fn generated_modules_are_generated() {
        let q = q51();
        for seed in 0..20 {
            let m = random_generated_module(&q, 5, 1, seed, 3);
            assert_eq!(m.generated_in(), Some(1));
            for d in 2..=5 {
                for v in 0..2 {
                    let into = q.in_arrows(v);
                    let mats: Vec<&QMatrix> = into.iter().map(|&a| m.action(a, d - 1)).collect();
                    assert_eq!(QMatrix::hstack(m.dim(d, v), &mats).rank(), m.dim(d, v));
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let m = random_generated_module(&q51(), 3, 1, 4, 2);
        let v = m.to_json();
        assert_eq!(TruncatedGradedModule::from_json(&v, "m").unwrap(), m);
        let mut bad = v.clone();
        bad["dims"]["0"]["1"] = Value::from(7);
        assert!(TruncatedGradedModule::from_json(&bad, "m").is_err());
    }

    #[test]
    fn relabeling_keeps_data() {
        let q = q51();
        let c = q.incidence_matrix();
        let other = Quiver::from_matrix(&c).unwrap();
        let m = random_module(&q, 3, 1, 2);
        let moved = m.relabeled_onto(&other).unwrap();
        assert_eq!(moved.dims(), m.dims());
        assert!(m.relabeled_onto(&Quiver::build(&["a"], &[])).is_err());
    }
}
