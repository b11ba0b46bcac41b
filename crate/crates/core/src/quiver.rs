//! Finite quivers, their incidence matrices, and paths.
//!
//! Incidence convention: entry `(i, j)` of the incidence matrix is the
//! number of arrows from vertex `j` to vertex `i`, with rows and columns in
//! the quiver's stored vertex order.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::json;
use crate::matrix::NNMatrix;

/// Largest number of arrows [`Quiver::from_matrix`] will materialize.
pub const MAX_ARROWS: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl Arrow {
    pub fn new(id: impl Into<String>, src: impl Into<String>, dst: impl Into<String>) -> Self {
        Arrow {
            id: id.into(),
            src: src.into(),
            dst: dst.into(),
        }
    }
}

/// A finite directed multigraph. Loops and parallel arrows are allowed.
#[derive(Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    // (src, dst) vertex indices per arrow
    ends: Vec<(usize, usize)>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quiver")
            .field("vertices", &self.vertices)
            .field("arrows", &self.arrows)
            .finish()
    }
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut arrow_index = HashMap::with_capacity(arrows.len());
        let mut ends = Vec::with_capacity(arrows.len());
        for (k, a) in arrows.iter().enumerate() {
            if arrow_index.insert(a.id.clone(), k).is_some() {
                return Err(Error::DuplicateArrow(a.id.clone()));
            }
            let lookup = |v: &String| {
                vertex_index.get(v).copied().ok_or_else(|| Error::DanglingArrow {
                    arrow: a.id.clone(),
                    vertex: v.clone(),
                })
            };
            ends.push((lookup(&a.src)?, lookup(&a.dst)?));
        }
        Ok(Quiver {
            vertices,
            arrows,
            vertex_index,
            arrow_index,
            ends,
        })
    }

    /// Convenience constructor from string slices; panics on invalid input.
    pub fn build(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Self {
        Quiver::new(
            vertices.iter().map(|v| v.to_string()).collect(),
            arrows.iter().map(|&(id, s, t)| Arrow::new(id, s, t)).collect(),
        )
        .expect("valid quiver")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn require_vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    /// `(src, dst)` vertex indices of arrow `a`.
    pub fn ends(&self, a: usize) -> (usize, usize) {
        self.ends[a]
    }

    pub fn src(&self, a: usize) -> usize {
        self.ends[a].0
    }

    pub fn dst(&self, a: usize) -> usize {
        self.ends[a].1
    }

    /// Indices of arrows leaving `v`, in arrow order.
    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.ends[a].0 == v).collect()
    }

    /// Indices of arrows entering `v`, in arrow order.
    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.ends[a].1 == v).collect()
    }

    pub fn incidence_matrix(&self) -> NNMatrix {
        let n = self.vertices.len();
        let mut counts = vec![0u64; n * n];
        for &(s, t) in &self.ends {
            counts[t * n + s] += 1;
        }
        NNMatrix::from_fn(n, n, |i, j| BigUint::from(counts[i * n + j]))
    }

    /// The quiver with incidence matrix `c`: vertices `v1..vn`, and arrows
    /// `a_j_i_k` for the k-th arrow from `vj` to `vi`.
    pub fn from_matrix(c: &NNMatrix) -> Result<Quiver> {
        let n = c.ensure_square()?;
        let total = c
            .entries()
            .iter()
            .try_fold(0usize, |acc, x| x.to_usize().and_then(|x| acc.checked_add(x)));
        match total {
            Some(t) if t <= MAX_ARROWS => {}
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "matrix describes more than {MAX_ARROWS} arrows"
                )))
            }
        }
        let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let mut arrows = Vec::new();
        for j in 0..n {
            for i in 0..n {
                let count = c.get(i, j).to_usize().expect("bounded above");
                for k in 1..=count {
                    arrows.push(Arrow::new(
                        format!("a_{}_{}_{k}", j + 1, i + 1),
                        vertices[j].clone(),
                        vertices[i].clone(),
                    ));
                }
            }
        }
        Quiver::new(vertices, arrows)
    }

    /// Same vertices and arrow ids with every arrow reversed.
    pub fn reversed(&self) -> Quiver {
        Quiver::new(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| Arrow::new(a.id.clone(), a.dst.clone(), a.src.clone()))
                .collect(),
        )
        .expect("reversal keeps ids valid")
    }

    /// Paths of length `n` as (start vertex, arrow indices in traversal
    /// order), sorted lexicographically by arrow-id sequence. For `n = 0`
    /// there is one trivial path per vertex, in vertex order.
    pub fn path_indices(&self, n: usize) -> Vec<(usize, Vec<usize>)> {
        if n == 0 {
            return (0..self.vertices.len()).map(|v| (v, Vec::new())).collect();
        }
        let mut by_id: Vec<usize> = (0..self.arrows.len()).collect();
        by_id.sort_by(|&a, &b| self.arrows[a].id.cmp(&self.arrows[b].id));
        let mut out_sorted: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for &a in &by_id {
            out_sorted[self.ends[a].0].push(a);
        }
        let mut result = Vec::new();
        let mut stack = Vec::with_capacity(n);
        for &a in &by_id {
            stack.push(a);
            self.extend_paths(n, &out_sorted, &mut stack, &mut result);
            stack.pop();
        }
        result
    }

    fn extend_paths(
        &self,
        n: usize,
        out_sorted: &[Vec<usize>],
        stack: &mut Vec<usize>,
        result: &mut Vec<(usize, Vec<usize>)>,
    ) {
        if stack.len() == n {
            result.push((self.ends[stack[0]].0, stack.clone()));
            return;
        }
        let end = self.ends[*stack.last().expect("nonempty")].1;
        for &b in &out_sorted[end] {
            stack.push(b);
            self.extend_paths(n, out_sorted, stack, result);
            stack.pop();
        }
    }

    /// All paths of length `n`, lexicographic by arrow-id sequence.
    pub fn enumerate_paths(&self, n: usize) -> Vec<Path> {
        self.path_indices(n)
            .into_iter()
            .map(|(start, arrows)| Path {
                start: self.vertices[start].clone(),
                end: match arrows.last() {
                    Some(&a) => self.arrows[a].dst.clone(),
                    None => self.vertices[start].clone(),
                },
                arrows: arrows.iter().map(|&a| self.arrows[a].id.clone()).collect(),
            })
            .collect()
    }

    /// Number of paths of length `n` from `from` to `to`, read off `C^n`.
    pub fn count_paths(&self, n: usize, from: &str, to: &str) -> Result<BigUint> {
        let i = self.require_vertex(from)?;
        let j = self.require_vertex(to)?;
        let exp = u32::try_from(n)
            .map_err(|_| Error::InvalidArgument(format!("path length {n} too large")))?;
        let power = self.incidence_matrix().pow(exp)?;
        Ok(power.get(j, i).clone())
    }

    pub fn to_json(&self) -> Value {
        json::object([
            (
                "arrows".to_string(),
                Value::Array(
                    self.arrows
                        .iter()
                        .map(|a| {
                            json::object([
                                ("dst".to_string(), Value::String(a.dst.clone())),
                                ("id".to_string(), Value::String(a.id.clone())),
                                ("src".to_string(), Value::String(a.src.clone())),
                            ])
                        })
                        .collect(),
                ),
            ),
            (
                "vertices".to_string(),
                Value::Array(self.vertices.iter().cloned().map(Value::String).collect()),
            ),
        ])
    }

    pub fn from_json(v: &Value, loc: &str) -> Result<Quiver> {
        let obj = json::as_object(v, loc)?;
        let vloc = format!("{loc}.vertices");
        let vertices = json::as_array(json::field(obj, "vertices", loc)?, &vloc)?
            .iter()
            .enumerate()
            .map(|(i, x)| json::as_str(x, &format!("{vloc}[{i}]")).map(str::to_string))
            .collect::<Result<Vec<_>>>()?;
        let aloc = format!("{loc}.arrows");
        let mut arrows = Vec::new();
        for (k, a) in json::as_array(json::field(obj, "arrows", loc)?, &aloc)?
            .iter()
            .enumerate()
        {
            let kloc = format!("{aloc}[{k}]");
            let o = json::as_object(a, &kloc)?;
            let get = |key: &str| -> Result<String> {
                json::as_str(json::field(o, key, &kloc)?, &format!("{kloc}.{key}")).map(str::to_string)
            };
            arrows.push(Arrow::new(get("id")?, get("src")?, get("dst")?));
        }
        Quiver::new(vertices, arrows).map_err(|e| Error::format(loc, e.to_string()))
    }

    /// Graphviz rendering, one edge statement per arrow labeled by its id.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {} {{\n", dot_id(name));
        for v in &self.vertices {
            out.push_str(&format!("  {};\n", dot_id(v)));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "  {} -> {} [label={}];\n",
                dot_id(&a.src),
                dot_id(&a.dst),
                dot_id(&a.id)
            ));
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A path, stored in traversal order (first arrow traversed first).
///
/// `Display` uses composition notation, right to left: the path that
/// traverses `a` and then `b` prints as `ba`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: String,
    end: String,
    arrows: Vec<String>,
}

impl Path {
    pub fn trivial(q: &Quiver, vertex: &str) -> Result<Path> {
        q.require_vertex(vertex)?;
        Ok(Path {
            start: vertex.to_string(),
            end: vertex.to_string(),
            arrows: Vec::new(),
        })
    }

    /// Builds a nonempty path from arrow ids in traversal order.
    pub fn from_arrows(q: &Quiver, arrows: &[&str]) -> Result<Path> {
        let idx = arrows
            .iter()
            .map(|id| q.arrow_index(id).ok_or_else(|| Error::UnknownArrow(id.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let Some(&first) = idx.first() else {
            return Err(Error::InvalidPath("use Path::trivial for length 0".into()));
        };
        for w in idx.windows(2) {
            if q.dst(w[0]) != q.src(w[1]) {
                return Err(Error::InvalidPath(format!(
                    "`{}` ends at {} but `{}` starts at {}",
                    q.arrows()[w[0]].id,
                    q.arrows()[w[0]].dst,
                    q.arrows()[w[1]].id,
                    q.arrows()[w[1]].src
                )));
            }
        }
        Ok(Path {
            start: q.arrows()[first].src.clone(),
            end: q.arrows()[*idx.last().expect("nonempty")].dst.clone(),
            arrows: arrows.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// s(p)
    pub fn start(&self) -> &str {
        &self.start
    }

    /// t(p)
    pub fn end(&self) -> &str {
        &self.end
    }

    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    /// Composition label, e.g. `vu` for "traverse u, then v".
    pub fn label(&self) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", self.start)
        } else {
            self.arrows.iter().rev().map(String::as_str).collect()
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
