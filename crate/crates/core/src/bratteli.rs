//! Leveled dimension diagrams: level `n + 1` is obtained from level `n`
//! by the incidence matrix, `labels(n+1) = C · labels(n)`, with `C(i, j)`
//! edges from vertex `j` on one level to vertex `i` on the next.

use num_bigint::BigUint;
use num_traits::One;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::json;
use crate::matrix::NNMatrix;
use crate::quiver::{dot_id, Quiver};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BratteliDiagram {
    pub vertices: Vec<String>,
    pub incidence: NNMatrix,
    /// `labels[n][v]` for levels `0..=N`.
    pub labels: Vec<Vec<BigUint>>,
}

/// Levels `0..=n`, starting from `d0` (all ones when omitted).
pub fn bratteli(q: &Quiver, n: usize, d0: Option<&[BigUint]>) -> Result<BratteliDiagram> {
    let c = q.incidence_matrix();
    let start = match d0 {
        Some(d) if d.len() != q.vertex_count() => {
            return Err(Error::ShapeMismatch(format!(
                "starting vector has {} entries for {} vertices",
                d.len(),
                q.vertex_count()
            )))
        }
        Some(d) => d.to_vec(),
        None => vec![BigUint::one(); q.vertex_count()],
    };
    let mut labels = Vec::with_capacity(n + 1);
    labels.push(start);
    for k in 0..n {
        let next = c.mul_vec(&labels[k])?;
        labels.push(next);
    }
    Ok(BratteliDiagram {
        vertices: q.vertices().to_vec(),
        incidence: c,
        labels,
    })
}

impl BratteliDiagram {
    pub fn levels(&self) -> usize {
        self.labels.len()
    }

    /// One ranked subgraph per level, nodes labeled `v:dim`, and one edge
    /// statement per unit of multiplicity.
    pub fn to_dot(&self) -> String {
        let node = |level: usize, v: usize| dot_id(&format!("{level}:{}", self.vertices[v]));
        let mut out = String::from("digraph bratteli {\n  rankdir=TB;\n");
        for (level, row) in self.labels.iter().enumerate() {
            out.push_str(&format!("  subgraph level{level} {{\n    rank=same;\n"));
            for (v, dim) in row.iter().enumerate() {
                out.push_str(&format!(
                    "    {} [label={}];\n",
                    node(level, v),
                    dot_id(&format!("{}:{dim}", self.vertices[v]))
                ));
            }
            out.push_str("  }\n");
        }
        let n = self.vertices.len();
        for level in 1..self.labels.len() {
            for j in 0..n {
                for i in 0..n {
                    let mut k = BigUint::from(0u8);
                    while &k < self.incidence.get(i, j) {
                        out.push_str(&format!("  {} -> {};\n", node(level - 1, j), node(level, i)));
                        k += 1u8;
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// `{"labels":[[..],..],"vertices":[..]}`
    pub fn to_json(&self) -> Value {
        json::object([
            (
                "labels".to_string(),
                Value::Array(
                    self.labels
                        .iter()
                        .map(|row| Value::Array(row.iter().map(json::biguint).collect()))
                        .collect(),
                ),
            ),
            (
                "vertices".to_string(),
                Value::Array(self.vertices.iter().cloned().map(Value::String).collect()),
            ),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qa() -> Quiver {
        Quiver::from_matrix(&NNMatrix::from_rows(&[[1u64, 1], [1, 1]]).unwrap()).unwrap()
    }

    fn qb() -> Quiver {
        Quiver::from_matrix(&NNMatrix::from_rows(&[[2u64]]).unwrap()).unwrap()
    }

    fn ints(rows: &[Vec<BigUint>]) -> Vec<Vec<u64>> {
        rows.iter()
            .map(|r| r.iter().map(|x| u64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn doubling_diagrams() {
        let a = bratteli(&qa(), 4, None).unwrap();
        assert_eq!(ints(&a.labels), [[1, 1], [2, 2], [4, 4], [8, 8], [16, 16]]);
        let b = bratteli(&qb(), 4, None).unwrap();
        assert_eq!(ints(&b.labels), [[1], [2], [4], [8], [16]]);
        assert_eq!(b.to_dot().matches(" -> ").count(), 8);
        assert_eq!(a.to_dot().matches(" -> ").count(), 16);
    }

    #[test]
    fn level_zero_only() {
        let d = bratteli(&qb(), 0, Some(&[BigUint::from(3u8)])).unwrap();
        assert_eq!(d.levels(), 1);
        assert_eq!(d.to_dot().matches("subgraph").count(), 1);
        assert!(bratteli(&qb(), 2, Some(&[])).is_err());
    }

    #[test]
    fn dot_text() {
        let d = bratteli(&qb(), 1, None).unwrap();
        assert_eq!(
            d.to_dot(),
            "digraph bratteli {\n  rankdir=TB;\n  subgraph level0 {\n    rank=same;\n    \"0:v1\" [label=\"v1:1\"];\n  }\n  subgraph level1 {\n    rank=same;\n    \"1:v1\" [label=\"v1:2\"];\n  }\n  \"0:v1\" -> \"1:v1\";\n  \"0:v1\" -> \"1:v1\";\n}\n"
        );
    }
}
