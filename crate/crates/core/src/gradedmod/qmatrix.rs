//! Dense matrices over exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::json;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix::from_fn(n, n, |i, j| if i == j { BigRational::one() } else { BigRational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(QMatrix::from_fn(rows.len(), cols, |i, j| {
            BigRational::from_integer(BigInt::from(rows[i].as_ref()[j]))
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn checked_mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let y = other.get(k, j);
                    if !y.is_zero() {
                        out.data[i * other.cols + j] += x * y;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero())
                    .fold(BigRational::zero(), |acc, j| acc + self.get(i, j) * &v[j])
            })
            .collect()
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &QMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    /// Side-by-side concatenation; all blocks need `rows` rows.
    pub fn hstack(rows: usize, blocks: &[&QMatrix]) -> QMatrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = QMatrix::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row count");
            out.put_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn block_diag(blocks: &[&QMatrix]) -> QMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = QMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.put_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Exact rank by fraction-free elimination on integer-scaled rows.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][col].clone();
            for r in rank + 1..m.len() {
                let factor = m[r][col].clone();
                for c in col..self.cols {
                    let v = (&pivot * &m[r][c] - &factor * &m[rank][c]) / &prev;
                    m[r][c] = v;
                }
            }
            prev = pivot;
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }

    /// Rows of `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| {
                    Value::Array(
                        (0..self.cols)
                            .map(|j| {
                                let x = self.get(i, j);
                                Value::String(format!("{}/{}", x.numer(), x.denom()))
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// Parses a matrix of the given shape. Entries may be `"p/q"` or `"p"`
    /// strings, or JSON integers.
    pub fn from_json(v: &Value, loc: &str, rows: usize, cols: usize) -> Result<QMatrix> {
        let arr = json::as_array(v, loc)?;
        if arr.len() != rows {
            return Err(Error::format(loc, format!("expected {rows} rows, got {}", arr.len())));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for (i, row) in arr.iter().enumerate() {
            let rloc = format!("{loc}[{i}]");
            let row = json::as_array(row, &rloc)?;
            if row.len() != cols {
                return Err(Error::format(rloc, format!("expected {cols} entries, got {}", row.len())));
            }
            for (j, x) in row.iter().enumerate() {
                data.push(parse_rational(x, &format!("{loc}[{i}][{j}]"))?);
            }
        }
        Ok(QMatrix { rows, cols, data })
    }
}

pub(crate) fn parse_rational(v: &Value, loc: &str) -> Result<BigRational> {
    match v {
        Value::Number(_) => Ok(BigRational::from_integer(json::parse_bigint(v, loc)?)),
        Value::String(s) => {
            let (p, q) = s.split_once('/').unwrap_or((s, "1"));
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| Error::format(loc, format!("bad numerator in `{s}`")))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|_| Error::format(loc, format!("bad denominator in `{s}`")))?;
            if q.is_zero() {
                return Err(Error::format(loc, format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(p, q))
        }
        other => Err(Error::format(loc, format!("expected a rational, got {other}"))),
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
