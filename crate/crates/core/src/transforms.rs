//! Graph transformations that induce elementary strong shift equivalences.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::matrix::NNMatrix;
use crate::quiver::{Arrow, Quiver};

/// A path of a base quiver: start vertex plus arrow indices in traversal
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasePath {
    pub start: usize,
    pub arrows: Vec<usize>,
}

/// A quiver whose vertices and arrows are paths of some base quiver.
#[derive(Debug, Clone)]
pub struct PathLabeledQuiver {
    pub base: Quiver,
    pub quiver: Quiver,
    pub vertex_paths: Vec<BasePath>,
    pub arrow_paths: Vec<BasePath>,
}

impl PathLabeledQuiver {
    /// The base quiver labeled by itself: vertices are trivial paths and
    /// arrows are length-1 paths.
    pub fn identity(q: &Quiver) -> Self {
        PathLabeledQuiver {
            base: q.clone(),
            quiver: q.clone(),
            vertex_paths: (0..q.vertex_count())
                .map(|v| BasePath {
                    start: v,
                    arrows: Vec::new(),
                })
                .collect(),
            arrow_paths: (0..q.arrow_count())
                .map(|a| BasePath {
                    start: q.src(a),
                    arrows: vec![a],
                })
                .collect(),
        }
    }

    fn path_key(&self, p: &BasePath) -> String {
        if p.arrows.is_empty() {
            format!("@{}", self.base.vertices()[p.start])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.base.arrows()[a].id.as_str())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Order-independent text form in terms of base paths: sorted vertex
    /// labels, then sorted (arrow, source, target) label triples. Two
    /// path-labeled quivers over the same base are canonically isomorphic
    /// iff these strings are equal.
    pub fn canonical_serialization(&self) -> String {
        let vertices: BTreeSet<String> =
            self.vertex_paths.iter().map(|p| self.path_key(p)).collect();
        let mut arrows: Vec<String> = (0..self.quiver.arrow_count())
            .map(|a| {
                let (s, t) = self.quiver.ends(a);
                format!(
                    "{}:{}->{}",
                    self.path_key(&self.arrow_paths[a]),
                    self.path_key(&self.vertex_paths[s]),
                    self.path_key(&self.vertex_paths[t])
                )
            })
            .collect();
        arrows.sort();
        format!(
            "V[{}];A[{}]",
            vertices.into_iter().collect::<Vec<_>>().join(";"),
            arrows.join(";")
        )
    }
}

/// Joins the ids of a composable pair in composition order (`ba` for "a
/// then b"). Plain concatenation is used when all ids have one length,
/// which keeps the result injective; otherwise a `·` separator is used.
fn pair_names(ids: &[&str], pairs: &[(usize, usize)]) -> Vec<String> {
    let fixed_width = ids.windows(2).all(|w| w[0].chars().count() == w[1].chars().count());
    let sep = if fixed_width { "" } else { "·" };
    let mut names: Vec<String> = pairs
        .iter()
        .map(|&(a, b)| format!("{}{sep}{}", ids[b], ids[a]))
        .collect();
    let mut seen = HashSet::new();
    if !names.iter().all(|n| seen.insert(n.clone())) {
        for (k, n) in names.iter_mut().enumerate() {
            n.push_str(&format!("#{}", k + 1));
        }
    }
    names
}

/// One higher-edge step on a labeled quiver.
fn edge_step(g: &PathLabeledQuiver) -> PathLabeledQuiver {
    let q = &g.quiver;
    let ids: Vec<&str> = q.arrows().iter().map(|a| a.id.as_str()).collect();
    let mut pairs = Vec::new();
    for a in 0..q.arrow_count() {
        for b in 0..q.arrow_count() {
            if q.dst(a) == q.src(b) {
                pairs.push((a, b));
            }
        }
    }
    let names = pair_names(&ids, &pairs);
    let arrows = pairs
        .iter()
        .zip(&names)
        .map(|(&(a, b), name)| Arrow::new(name.clone(), ids[a], ids[b]))
        .collect();
    let quiver = Quiver::new(ids.iter().map(|s| s.to_string()).collect(), arrows)
        .expect("arrow ids of a quiver are unique vertex ids");
    let arrow_paths = pairs
        .iter()
        .map(|&(a, b)| {
            let mut p = g.arrow_paths[a].clone();
            let last = *g.arrow_paths[b].arrows.last().expect("arrows are nonempty paths");
            p.arrows.push(last);
            p
        })
        .collect();
    PathLabeledQuiver {
        base: g.base.clone(),
        quiver,
        vertex_paths: g.arrow_paths.clone(),
        arrow_paths,
    }
}

/// Q^[2]: vertices are the arrows of `q`, with one arrow `a -> b`, named
/// `ba`, for each length-2 path that traverses `a` then `b`.
pub fn higher_edge_graph(q: &Quiver) -> Quiver {
    edge_step(&PathLabeledQuiver::identity(q)).quiver
}

/// Q^[n] as the (n-1)-fold iterate of [`higher_edge_graph`], carrying the
/// base path behind every vertex (length n-1) and arrow (length n).
pub fn higher_edge_graph_labeled(q: &Quiver, n: usize) -> Result<PathLabeledQuiver> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("higher edge graph needs n >= 2, got {n}")));
    }
    let mut g = PathLabeledQuiver::identity(q);
    for _ in 1..n {
        g = edge_step(&g);
    }
    Ok(g)
}

pub fn higher_edge_graph_n(q: &Quiver, n: usize) -> Result<Quiver> {
    higher_edge_graph_labeled(q, n).map(|g| g.quiver)
}

/// The graph with vertex set `Q_{n-1}` and arrow set `Q_n`, built directly
/// from path enumeration: a path `a_1 ... a_n` runs from `a_1 ... a_{n-1}`
/// to `a_2 ... a_n`.
pub fn path_graph(q: &Quiver, n: usize) -> Result<PathLabeledQuiver> {
    if n == 0 {
        return Err(Error::InvalidArgument("path graph needs n >= 1".into()));
    }
    let to_base = |(start, arrows): (usize, Vec<usize>)| BasePath { start, arrows };
    let vertex_paths: Vec<BasePath> = q.path_indices(n - 1).into_iter().map(to_base).collect();
    let arrow_paths: Vec<BasePath> = q.path_indices(n).into_iter().map(to_base).collect();
    let vertex_ids: Vec<String> = (0..vertex_paths.len()).map(|i| format!("p{i}")).collect();
    let index: std::collections::HashMap<&BasePath, usize> =
        vertex_paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let arrows = arrow_paths
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let head = if n == 1 {
                BasePath { start: p.start, arrows: vec![] }
            } else {
                BasePath { start: p.start, arrows: p.arrows[..n - 1].to_vec() }
            };
            let tail = if n == 1 {
                BasePath { start: q.dst(p.arrows[0]), arrows: vec![] }
            } else {
                BasePath { start: q.src(p.arrows[1]), arrows: p.arrows[1..].to_vec() }
            };
            Arrow::new(
                format!("e{k}"),
                vertex_ids[index[&head]].clone(),
                vertex_ids[index[&tail]].clone(),
            )
        })
        .collect();
    let quiver = Quiver::new(vertex_ids, arrows).expect("generated ids are unique");
    Ok(PathLabeledQuiver {
        base: q.clone(),
        quiver,
        vertex_paths,
        arrow_paths,
    })
}

/// Q^(l): the quiver whose incidence matrix is `C^l`.
pub fn power_graph(q: &Quiver, l: u32) -> Result<Quiver> {
    if l == 0 {
        return Err(Error::InvalidArgument("power graph needs l >= 1".into()));
    }
    Quiver::from_matrix(&q.incidence_matrix().pow(l)?)
}

/// The vertex/arrow factorization `C = LR`, `C(Q^[2]) = RL`.
///
/// `L` is `|Q_0| x |Q_1|` with `L[i][a] = 1` iff `a` ends at `i`; `R` is
/// `|Q_1| x |Q_0|` with `R[a][i] = 1` iff `a` starts at `i`. Columns of `L`
/// and rows of `R` follow the arrow order, which is also the vertex order
/// of [`higher_edge_graph`].
pub fn split_lr(q: &Quiver) -> (NNMatrix, NNMatrix) {
    let one = || BigUint::from(1u32);
    let zero = || BigUint::from(0u32);
    let l = NNMatrix::from_fn(q.vertex_count(), q.arrow_count(), |i, a| {
        if q.dst(a) == i { one() } else { zero() }
    });
    let r = NNMatrix::from_fn(q.arrow_count(), q.vertex_count(), |a, i| {
        if q.src(a) == i { one() } else { zero() }
    });
    (l, r)
}

/// Partition of the in-arrows (in-split) or out-arrows (out-split) of one
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSpec {
    pub vertex: String,
    pub classes: Vec<Vec<String>>,
}

impl SplitSpec {
    pub fn new(vertex: impl Into<String>, classes: &[&[&str]]) -> Self {
        SplitSpec {
            vertex: vertex.into(),
            classes: classes
                .iter()
                .map(|c| c.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }
}

/// A split quiver with its elementary-SSE witnesses: `LR = C(Q)` and
/// `RL = C(Q')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub quiver: Quiver,
    pub l: NNMatrix,
    pub r: NNMatrix,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    In,
    Out,
}

/// Validates the partition and returns the class index of every arrow in
/// the partitioned set.
fn class_of(q: &Quiver, v: usize, spec: &SplitSpec, side: Side) -> Result<Vec<Option<usize>>> {
    let expected: BTreeSet<usize> = match side {
        Side::In => q.in_arrows(v),
        Side::Out => q.out_arrows(v),
    }
    .into_iter()
    .collect();
    let kind = if side == Side::In { "in" } else { "out" };
    let mut class = vec![None; q.arrow_count()];
    for (i, c) in spec.classes.iter().enumerate() {
        if c.is_empty() {
            return Err(Error::InvalidPartition(format!("class {} is empty", i + 1)));
        }
        for id in c {
            let a = q
                .arrow_index(id)
                .ok_or_else(|| Error::InvalidPartition(format!("unknown arrow `{id}`")))?;
            if !expected.contains(&a) {
                return Err(Error::InvalidPartition(format!(
                    "`{id}` is not an {kind}-arrow of `{}`",
                    spec.vertex
                )));
            }
            if class[a].replace(i).is_some() {
                return Err(Error::InvalidPartition(format!("`{id}` appears in two classes")));
            }
        }
    }
    if let Some(&a) = expected.iter().find(|&&a| class[a].is_none()) {
        return Err(Error::InvalidPartition(format!(
            "{kind}-arrow `{}` is not covered",
            q.arrows()[a].id
        )));
    }
    Ok(class)
}

fn split(q: &Quiver, spec: &SplitSpec, side: Side) -> Result<SplitResult> {
    let v = q.require_vertex(&spec.vertex)?;
    let class = class_of(q, v, spec, side)?;
    let n = spec.classes.len();
    let copy = |j: usize| format!("{}#{}", spec.vertex, j + 1);

    // new vertex list and the map new index -> original index
    let mut vertices = Vec::new();
    let mut origin = Vec::new();
    for (i, name) in q.vertices().iter().enumerate() {
        if i == v {
            for j in 0..n {
                vertices.push(copy(j));
                origin.push(i);
            }
        } else {
            vertices.push(name.clone());
            origin.push(i);
        }
    }

    let mut arrows = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let (s, t) = q.ends(a);
        let copies = |make: &dyn Fn(usize) -> (String, String)| -> Vec<Arrow> {
            (0..n)
                .map(|j| {
                    let (src, dst) = make(j);
                    Arrow::new(format!("{}#{}", arrow.id, j + 1), src, dst)
                })
                .collect()
        };
        match (side, s == v, t == v) {
            (_, false, false) => arrows.push(arrow.clone()),
            (Side::In, true, true) => {
                let i = class[a].expect("loops at v are in-arrows");
                arrows.extend(copies(&|j| (copy(j), copy(i))));
            }
            (Side::In, false, true) => {
                let i = class[a].expect("partitioned");
                arrows.push(Arrow::new(arrow.id.clone(), arrow.src.clone(), copy(i)));
            }
            (Side::In, true, false) => arrows.extend(copies(&|j| (copy(j), arrow.dst.clone()))),
            (Side::Out, true, true) => {
                let i = class[a].expect("loops at v are out-arrows");
                arrows.extend(copies(&|j| (copy(i), copy(j))));
            }
            (Side::Out, true, false) => {
                let i = class[a].expect("partitioned");
                arrows.push(Arrow::new(arrow.id.clone(), copy(i), arrow.dst.clone()));
            }
            (Side::Out, false, true) => arrows.extend(copies(&|j| (arrow.src.clone(), copy(j)))),
        }
    }
    let split_quiver = Quiver::new(vertices, arrows)?;

    let c = q.incidence_matrix();
    let m = q.vertex_count();
    let m2 = split_quiver.vertex_count();
    let class_count = |i: usize, from: usize, to: usize| -> BigUint {
        // arrows from -> to lying in class i of the partition
        let count = (0..q.arrow_count())
            .filter(|&a| q.ends(a) == (from, to) && class[a] == Some(i))
            .count();
        BigUint::from(count)
    };
    let class_index = |x: usize| -> Option<usize> {
        (origin[x] == v).then(|| x - v)
    };
    let indicator = |x: usize, w: usize| BigUint::from(u32::from(origin[x] == w));
    let (l, r) = match side {
        Side::In => {
            let l = NNMatrix::from_fn(m, m2, |w, x| indicator(x, w));
            let r = NNMatrix::from_fn(m2, m, |x, u| match class_index(x) {
                Some(i) => class_count(i, u, v),
                None => c.get(origin[x], u).clone(),
            });
            (l, r)
        }
        Side::Out => {
            let r = NNMatrix::from_fn(m2, m, indicator);
            let l = NNMatrix::from_fn(m, m2, |w, x| match class_index(x) {
                Some(i) => class_count(i, v, w),
                None => c.get(w, origin[x]).clone(),
            });
            (l, r)
        }
    };

    if &l * &r != c {
        return Err(Error::SplitVerification(format!("LR = {} but C(Q) = {c}", &l * &r)));
    }
    let c2 = split_quiver.incidence_matrix();
    if &r * &l != c2 {
        return Err(Error::SplitVerification(format!("RL = {} but C(Q') = {c2}", &r * &l)));
    }
    Ok(SplitResult {
        quiver: split_quiver,
        l,
        r,
    })
}

/// In-splitting: the vertex is replaced by one copy per class of its
/// in-arrows. In-arrows move to the copy of their class, out-arrows are
/// replicated to every copy (`b#j`), and a loop in class `i` becomes
/// `a#j: v#j -> v#i` for every `j`.
pub fn in_split(q: &Quiver, spec: &SplitSpec) -> Result<SplitResult> {
    split(q, spec, Side::In)
}

/// Out-splitting, dual to [`in_split`]: out-arrows move to the copy of
/// their class, in-arrows are replicated, and a loop in class `i` becomes
/// `a#j: v#i -> v#j`.
pub fn out_split(q: &Quiver, spec: &SplitSpec) -> Result<SplitResult> {
    split(q, spec, Side::Out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nn(rows: &[&[u64]]) -> NNMatrix {
        NNMatrix::from_rows(rows).unwrap()
    }

    /// w: 1 -> 1, v: 1 -> 2, u: 2 -> 1, arrows ordered (u, v, w).
    fn small() -> Quiver {
        Quiver::build(&["1", "2"], &[("u", "2", "1"), ("v", "1", "2"), ("w", "1", "1")])
    }

    fn loop1() -> Quiver {
        Quiver::build(&["x"], &[("a", "x", "x")])
    }

    fn qa() -> Quiver {
        Quiver::build(
            &["1", "2"],
            &[("a", "1", "1"), ("b", "1", "2"), ("c", "2", "1"), ("d", "2", "2")],
        )
    }

    #[test]
    fn higher_edge_graph_of_small_quiver() {
        let g = higher_edge_graph(&small());
        assert_eq!(g.vertices(), ["u", "v", "w"]);
        let mut arrows: Vec<(String, String, String)> = g
            .arrows()
            .iter()
            .map(|a| (a.id.clone(), a.src.clone(), a.dst.clone()))
            .collect();
        arrows.sort();
        let expected = [
            ("uv", "v", "u"),
            ("vu", "u", "v"),
            ("vw", "w", "v"),
            ("wu", "u", "w"),
            ("ww", "w", "w"),
        ];
        let expected: Vec<_> = expected
            .iter()
            .map(|&(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect();
        assert_eq!(arrows, expected);
        assert_eq!(g.incidence_matrix(), nn(&[&[0, 1, 0], &[1, 0, 1], &[1, 0, 1]]));
    }

    #[test]
    fn higher_edge_graph_fixed_point_and_counts() {
        let g = higher_edge_graph(&loop1());
        assert_eq!((g.vertex_count(), g.arrow_count()), (1, 1));
        let g = higher_edge_graph(&qa());
        assert_eq!((g.vertex_count(), g.arrow_count()), (4, 8));
        for n in 2..6 {
            let g = higher_edge_graph_n(&loop1(), n).unwrap();
            assert_eq!(g.incidence_matrix(), nn(&[&[1]]));
        }
    }

    #[test]
    fn iterated_edge_graph() {
        let q = small();
        assert_eq!(higher_edge_graph_n(&q, 2).unwrap(), higher_edge_graph(&q));
        let g3 = higher_edge_graph_n(&q, 3).unwrap();
        assert_eq!((g3.vertex_count(), g3.arrow_count()), (5, 8));
        assert!(higher_edge_graph_n(&q, 1).is_err());
        for n in 2..=4 {
            assert_eq!(
                higher_edge_graph_labeled(&q, n).unwrap().canonical_serialization(),
                path_graph(&q, n).unwrap().canonical_serialization()
            );
        }
    }

    #[test]
    fn variable_width_ids_stay_unique() {
        let q = Quiver::build(&["1"], &[("a", "1", "1"), ("ab", "1", "1"), ("b", "1", "1"), ("ba", "1", "1")]);
        let g = higher_edge_graph(&q);
        assert_eq!(g.arrow_count(), 16);
        assert!(g.arrows().iter().any(|a| a.id == "b·a"));
    }

    #[test]
    fn power_graphs() {
        let q = small();
        assert_eq!(power_graph(&q, 1).unwrap().incidence_matrix(), q.incidence_matrix());
        assert_eq!(power_graph(&q, 2).unwrap().incidence_matrix(), nn(&[&[2, 1], &[1, 1]]));
        let qb = Quiver::from_matrix(&nn(&[&[2]])).unwrap();
        assert_eq!(power_graph(&qb, 3).unwrap().incidence_matrix(), nn(&[&[8]]));
        assert!(power_graph(&q, 0).is_err());
    }

    #[test]
    fn vertex_arrow_factorization() {
        let q = small();
        let (l, r) = split_lr(&q);
        assert_eq!(l, nn(&[&[1, 0, 1], &[0, 1, 0]]));
        assert_eq!(r, nn(&[&[0, 1], &[1, 0], &[1, 0]]));
        assert_eq!(&l * &r, nn(&[&[1, 1], &[1, 0]]));
        assert_eq!(&r * &l, higher_edge_graph(&q).incidence_matrix());

        let (l, r) = split_lr(&loop1());
        assert_eq!((l, r), (nn(&[&[1]]), nn(&[&[1]])));

        let qb = Quiver::build(&["1"], &[("x", "1", "1"), ("y", "1", "1")]);
        let (l, r) = split_lr(&qb);
        assert_eq!(l, nn(&[&[1, 1]]));
        assert_eq!(r, nn(&[&[1], &[1]]));
        assert_eq!(&l * &r, nn(&[&[2]]));
    }

    #[test]
    fn in_split_small_quiver() {
        let s = in_split(&small(), &SplitSpec::new("1", &[&["w"], &["u"]])).unwrap();
        assert_eq!(s.quiver.vertices(), ["1#1", "1#2", "2"]);
        assert_eq!(s.quiver.incidence_matrix(), nn(&[&[1, 1, 0], &[0, 0, 1], &[1, 1, 0]]));
        assert_eq!(s.l, nn(&[&[1, 1, 0], &[0, 0, 1]]));
        assert_eq!(s.r, nn(&[&[1, 0], &[0, 1], &[1, 0]]));
    }

    #[test]
    fn out_split_small_quiver() {
        let s = out_split(&small(), &SplitSpec::new("1", &[&["w"], &["v"]])).unwrap();
        assert_eq!(s.quiver.incidence_matrix(), nn(&[&[1, 0, 1], &[1, 0, 1], &[0, 1, 0]]));
        assert_eq!(s.l, nn(&[&[1, 0, 1], &[0, 1, 0]]));
        assert_eq!(s.r, nn(&[&[1, 0], &[1, 0], &[0, 1]]));
    }

    #[test]
    fn one_class_split_is_a_relabeling() {
        let q = small();
        let s = in_split(&q, &SplitSpec::new("1", &[&["u", "w"]])).unwrap();
        assert_eq!(s.quiver.incidence_matrix(), q.incidence_matrix());
        assert_eq!(s.l, NNMatrix::identity(2));
        let s = out_split(&q, &SplitSpec::new("2", &[&["u"]])).unwrap();
        assert_eq!(s.quiver.incidence_matrix(), q.incidence_matrix());
        assert_eq!(s.r, NNMatrix::identity(2));
    }

    #[test]
    fn invalid_partitions() {
        let q = small();
        let missing = in_split(&q, &SplitSpec::new("1", &[&["w"]]));
        assert!(matches!(missing, Err(Error::InvalidPartition(_))));
        let overlap = in_split(&q, &SplitSpec::new("1", &[&["w", "u"], &["u"]]));
        assert!(matches!(overlap, Err(Error::InvalidPartition(_))));
        let empty = in_split(&q, &SplitSpec::new("1", &[&["w", "u"], &[]]));
        assert!(matches!(empty, Err(Error::InvalidPartition(_))));
        let wrong_side = in_split(&q, &SplitSpec::new("1", &[&["w", "u", "v"]]));
        assert!(matches!(wrong_side, Err(Error::InvalidPartition(_))));
        let unknown = in_split(&q, &SplitSpec::new("9", &[&["w"]]));
        assert_eq!(unknown.unwrap_err(), Error::UnknownVertex("9".into()));
    }

    #[test]
    fn out_split_is_in_split_of_reversal() {
        let q = qa();
        let spec = SplitSpec::new("1", &[&["a"], &["b"]]);
        let out = out_split(&q, &spec).unwrap();
        let inn = in_split(&q.reversed(), &spec).unwrap();
        assert_eq!(out.quiver, inn.quiver.reversed());
        assert_eq!(out.l, inn.r.transpose());
        assert_eq!(out.r, inn.l.transpose());
    }

    #[test]
    fn splitting_a_source_removes_it() {
        let q = Quiver::build(&["s", "t"], &[("a", "s", "t"), ("b", "t", "t")]);
        let s = in_split(&q, &SplitSpec { vertex: "s".into(), classes: vec![] }).unwrap();
        assert_eq!(s.quiver.vertices(), ["t"]);
        assert_eq!(s.quiver.incidence_matrix(), nn(&[&[1]]));
    }
}
