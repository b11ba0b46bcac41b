//! Conjugacy and shift-equivalence invariants of nonnegative matrices.
//!
//! These are necessary conditions only: [`invariant_report`] can refute an
//! equivalence but never asserts one.

mod poly;
mod snf;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::Result;
use crate::json;
use crate::matrix::{IntMatrix, NNMatrix};

pub use poly::IntPolynomial;
pub use snf::{smith_normal_form, SmithNormalForm};

/// Finitely generated abelian group as invariant factors `d1 | d2 | ...`,
/// with `0` standing for a free summand and factors equal to 1 omitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupInvariants {
    pub factors: Vec<BigUint>,
}

impl AbelianGroupInvariants {
    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.factors.iter().map(json::biguint).collect())
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Invariant factors of `coker(I - A) = Z^n / (I - A) Z^n`.
pub fn bowen_franks(a: &NNMatrix) -> Result<AbelianGroupInvariants> {
    a.ensure_square()?;
    let snf = smith_normal_form(&a.to_int().identity_minus());
    let factors = snf
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_one())
        .map(|d| d.magnitude().clone())
        .collect();
    Ok(AbelianGroupInvariants { factors })
}

/// `det(tI - A)` by the Faddeev–LeVerrier recursion. Every division is
/// exact over the integers.
pub fn char_poly(a: &NNMatrix) -> Result<IntPolynomial> {
    let n = a.ensure_square()?;
    let a = a.to_int();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = &a * &m;
        for i in 0..n {
            *next.get_mut(i, i) += &coeffs[n - k + 1];
        }
        m = next;
        let tr = (&a * &m).trace();
        coeffs[n - k] = -(tr / BigInt::from(k));
    }
    Ok(IntPolynomial::new(coeffs))
}

/// `det(I - tA)`, computed from the power traces `tr(A^k)` with Newton's
/// identities.
pub fn zeta_denominator(a: &NNMatrix) -> Result<IntPolynomial> {
    let n = a.ensure_square()?;
    let traces: Vec<BigInt> = periodic_point_counts(a, n)?
        .into_iter()
        .map(BigInt::from)
        .collect();
    // e[k]: elementary symmetric functions of the eigenvalues
    let mut e = vec![BigInt::one()];
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &traces[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigInt::from(k));
    }
    let coeffs = e
        .into_iter()
        .enumerate()
        .map(|(k, x)| if k % 2 == 0 { x } else { -x })
        .collect();
    Ok(IntPolynomial::new(coeffs))
}

/// `[tr(A), tr(A^2), ..., tr(A^pmax)]`, the numbers of points of period
/// dividing `p` in the edge shift.
pub fn periodic_point_counts(a: &NNMatrix, pmax: usize) -> Result<Vec<BigUint>> {
    let n = a.ensure_square()?;
    let mut power = NNMatrix::identity(n);
    let mut out = Vec::with_capacity(pmax);
    for _ in 0..pmax {
        power = &power * a;
        out.push(power.trace());
    }
    Ok(out)
}

/// Exact Collatz–Wielandt bounds on the spectral radius from the iterates
/// `A^k 1`. The returned interval is the intersection over all iterations.
pub fn spectral_radius_bounds(
    a: &NNMatrix,
    iterations: usize,
) -> Result<(BigRational, BigRational)> {
    let n = a.ensure_square()?;
    let ratio = |num: &BigUint, den: &BigUint| {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    };
    let mut lower = BigRational::zero();
    let mut upper = a
        .row_sums()
        .into_iter()
        .max()
        .map(|s| BigRational::from_integer(BigInt::from(s)))
        .unwrap_or_else(BigRational::zero);
    let mut x = vec![BigUint::one(); n];
    for _ in 0..iterations {
        let y = a.mul_vec(&x)?;
        if y.iter().all(Zero::is_zero) {
            // A^k 1 = 0 forces A nilpotent
            return Ok((BigRational::zero(), BigRational::zero()));
        }
        let ratios: Vec<BigRational> = x
            .iter()
            .zip(&y)
            .filter(|(xi, _)| !xi.is_zero())
            .map(|(xi, yi)| ratio(yi, xi))
            .collect();
        if let Some(lo) = ratios.iter().min() {
            if *lo > lower {
                lower = lo.clone();
            }
        }
        if x.iter().all(|xi| !xi.is_zero()) {
            if let Some(hi) = ratios.iter().max() {
                if *hi < upper {
                    upper = hi.clone();
                }
            }
        }
        x = y;
    }
    Ok((lower, upper))
}

/// `det(I - A)`.
pub fn det_identity_minus(a: &NNMatrix) -> Result<BigInt> {
    a.ensure_square()?;
    a.to_int().identity_minus().det()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Some invariant differs, so the matrices are not shift equivalent.
    Distinguished,
    /// Every computed invariant agrees. This does not imply equivalence.
    Consistent,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Distinguished => "distinguished",
            Verdict::Consistent => "consistent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantBlock {
    pub name: &'static str,
    pub a: Value,
    pub b: Value,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub verdict: Verdict,
    pub pmax: usize,
    pub blocks: Vec<InvariantBlock>,
}

impl InvariantReport {
    pub fn to_json(&self) -> Value {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                (
                    b.name.to_string(),
                    json::object([
                        ("a".to_string(), b.a.clone()),
                        ("agree".to_string(), Value::Bool(b.agree)),
                        ("b".to_string(), b.b.clone()),
                    ]),
                )
            })
            .collect::<Vec<_>>();
        json::object([
            ("invariants".to_string(), json::object(blocks)),
            ("pmax".to_string(), Value::from(self.pmax)),
            ("verdict".to_string(), Value::String(self.verdict.as_str().into())),
        ])
    }
}

/// Compares the nonzero part of the characteristic polynomial, the
/// Bowen–Franks group, periodic point counts up to `pmax`, and
/// `det(I - A)`.
pub fn invariant_report(a: &NNMatrix, b: &NNMatrix, pmax: usize) -> Result<InvariantReport> {
    let mut blocks = Vec::new();
    let mut push = |name: &'static str, x: Value, y: Value| {
        let agree = x == y;
        blocks.push(InvariantBlock { name, a: x, b: y, agree });
    };
    push(
        "char_poly_nonzero_part",
        char_poly(a)?.nonzero_part().to_json(),
        char_poly(b)?.nonzero_part().to_json(),
    );
    push("bowen_franks", bowen_franks(a)?.to_json(), bowen_franks(b)?.to_json());
    let counts = |m: &NNMatrix| -> Result<Value> {
        Ok(Value::Array(
            periodic_point_counts(m, pmax)?.iter().map(json::biguint).collect(),
        ))
    };
    push("periodic_points", counts(a)?, counts(b)?);
    push(
        "det_identity_minus",
        json::bigint(&det_identity_minus(a)?),
        json::bigint(&det_identity_minus(b)?),
    );
    let verdict = if blocks.iter().all(|b| b.agree) {
        Verdict::Consistent
    } else {
        Verdict::Distinguished
    };
    Ok(InvariantReport { verdict, pmax, blocks })
}
