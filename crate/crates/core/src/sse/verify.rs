use num_bigint::BigUint;
use serde_json::Value;

use super::{SeWitness, SseStep};
use crate::error::{Error, Result};
use crate::json;
use crate::matrix::NNMatrix;

/// One entry where an equation fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryMismatch {
    pub equation: &'static str,
    pub row: usize,
    pub col: usize,
    pub expected: BigUint,
    pub actual: BigUint,
}

impl EntryMismatch {
    pub fn to_json(&self) -> Value {
        json::object([
            ("actual".to_string(), json::biguint(&self.actual)),
            ("col".to_string(), Value::from(self.col)),
            ("equation".to_string(), Value::String(self.equation.into())),
            ("expected".to_string(), json::biguint(&self.expected)),
            ("row".to_string(), Value::from(self.row)),
        ])
    }
}

fn mismatches(equation: &'static str, expected: &NNMatrix, actual: &NNMatrix) -> Vec<EntryMismatch> {
    let mut out = Vec::new();
    for i in 0..expected.rows() {
        for j in 0..expected.cols() {
            if expected.get(i, j) != actual.get(i, j) {
                out.push(EntryMismatch {
                    equation,
                    row: i,
                    col: j,
                    expected: expected.get(i, j).clone(),
                    actual: actual.get(i, j).clone(),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub failures: Vec<EntryMismatch>,
    /// `A` has a zero row or column, so it does not describe an edge shift
    /// without sources or sinks. Verification is unaffected.
    pub degenerate_input: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> Value {
        json::object([
            ("degenerate_input".to_string(), Value::Bool(self.degenerate_input)),
            (
                "failures".to_string(),
                Value::Array(self.failures.iter().map(EntryMismatch::to_json).collect()),
            ),
            ("ok".to_string(), Value::Bool(self.ok)),
        ])
    }
}

fn shape_error(what: &str, got: (usize, usize), want: (usize, usize)) -> Error {
    Error::ShapeMismatch(format!(
        "{what} is {}x{}, expected {}x{}",
        got.0, got.1, want.0, want.1
    ))
}

/// Checks `A = LR` and `B = RL` entry by entry.
pub fn verify_elementary(a: &NNMatrix, b: &NNMatrix, l: &NNMatrix, r: &NNMatrix) -> Result<VerifyReport> {
    let m = a.ensure_square()?;
    let n = b.ensure_square()?;
    if l.shape() != (m, n) {
        return Err(shape_error("L", l.shape(), (m, n)));
    }
    if r.shape() != (n, m) {
        return Err(shape_error("R", r.shape(), (n, m)));
    }
    let mut failures = mismatches("A = LR", a, &(l * r));
    failures.extend(mismatches("B = RL", b, &(r * l)));
    Ok(VerifyReport {
        ok: failures.is_empty(),
        failures,
        degenerate_input: a.has_zero_row_or_col(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub ok: bool,
    /// Index of the first step at which the chain breaks.
    pub first_break: Option<usize>,
    pub failures: Vec<String>,
}

impl ChainReport {
    pub fn to_json(&self) -> Value {
        json::object([
            (
                "failures".to_string(),
                Value::Array(self.failures.iter().cloned().map(Value::String).collect()),
            ),
            (
                "first_break".to_string(),
                self.first_break.map_or(Value::Null, Value::from),
            ),
            ("ok".to_string(), Value::Bool(self.ok)),
        ])
    }
}

/// Checks that `steps` leads from `a` to `b`: the first step starts at `a`,
/// the last ends at `b`, each step verifies and consecutive steps meet.
pub fn verify_chain(steps: &[SseStep], a: &NNMatrix, b: &NNMatrix) -> ChainReport {
    let mut failures = Vec::new();
    let mut first_break = None;
    let mut note = |idx: usize, msg: String, first: &mut Option<usize>| {
        if first.is_none() {
            *first = Some(idx);
        }
        failures.push(format!("step {idx}: {msg}"));
    };
    if steps.is_empty() {
        note(0, "empty chain".into(), &mut first_break);
    }
    for (i, s) in steps.iter().enumerate() {
        match verify_elementary(s.a(), s.b(), s.l(), s.r()) {
            Ok(rep) if rep.ok => {}
            Ok(rep) => note(i, format!("{} entries fail", rep.failures.len()), &mut first_break),
            Err(e) => note(i, e.to_string(), &mut first_break),
        }
        if i == 0 && s.a() != a {
            note(0, format!("starts at {} instead of {a}", s.a()), &mut first_break);
        }
        if i > 0 && steps[i - 1].b() != s.a() {
            note(
                i,
                format!("starts at {} but the previous step ends at {}", s.a(), steps[i - 1].b()),
                &mut first_break,
            );
        }
        if i + 1 == steps.len() && s.b() != b {
            note(i, format!("ends at {} instead of {b}", s.b()), &mut first_break);
        }
    }
    ChainReport {
        ok: failures.is_empty(),
        first_break,
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationCheck {
    pub equation: &'static str,
    pub holds: bool,
    pub mismatches: Vec<EntryMismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeReport {
    pub ok: bool,
    pub checks: Vec<EquationCheck>,
    /// The intertwining equation used for `R`.
    pub convention: &'static str,
}

impl SeReport {
    pub fn to_json(&self) -> Value {
        json::object([
            (
                "checks".to_string(),
                Value::Array(
                    self.checks
                        .iter()
                        .map(|c| {
                            json::object([
                                ("equation".to_string(), Value::String(c.equation.into())),
                                ("holds".to_string(), Value::Bool(c.holds)),
                                (
                                    "mismatches".to_string(),
                                    Value::Array(c.mismatches.iter().map(EntryMismatch::to_json).collect()),
                                ),
                            ])
                        })
                        .collect(),
                ),
            ),
            ("convention".to_string(), Value::String(self.convention.into())),
            ("ok".to_string(), Value::Bool(self.ok)),
        ])
    }
}

/// Checks the four shift-equivalence equations of lag `w.lag`, with the
/// intertwining relation for `R` taken as `RA = BR`.
pub fn verify_shift_equivalence(a: &NNMatrix, b: &NNMatrix, w: &SeWitness) -> Result<SeReport> {
    let m = a.ensure_square()?;
    let n = b.ensure_square()?;
    if w.l.shape() != (m, n) {
        return Err(shape_error("L", w.l.shape(), (m, n)));
    }
    if w.r.shape() != (n, m) {
        return Err(shape_error("R", w.r.shape(), (n, m)));
    }
    let (l, r) = (&w.l, &w.r);
    let check = |equation: &'static str, lhs: NNMatrix, rhs: NNMatrix| {
        let mismatches = mismatches(equation, &lhs, &rhs);
        EquationCheck {
            equation,
            holds: mismatches.is_empty(),
            mismatches,
        }
    };
    let checks = vec![
        check("AL = LB", a * l, l * b),
        check("RA = BR", r * a, b * r),
        check("A^lag = LR", a.pow(w.lag)?, l * r),
        check("B^lag = RL", b.pow(w.lag)?, r * l),
    ];
    Ok(SeReport {
        ok: checks.iter().all(|c| c.holds),
        checks,
        convention: "RA = BR",
    })
}
