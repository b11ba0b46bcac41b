//! Certificate files.
//!
//! ```text
//! {"kind":"sse-chain","steps":[{"L":[[..]],"R":[[..]]}, ...]}
//! {"kind":"se-witness","L":[[..]],"R":[[..]],"lag":l}
//! ```

use serde_json::Value;

use super::verify::verify_shift_equivalence;
use super::{SeWitness, SseChain};
use crate::error::{Error, Result};
use crate::json;
use crate::matrix::NNMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Witness pairs `(L, R)`, not yet checked for compatibility.
    SseChain(Vec<(NNMatrix, NNMatrix)>),
    SeWitness(SeWitness),
}

impl Certificate {
    pub fn from_chain(chain: &SseChain) -> Self {
        Certificate::SseChain(chain.steps().iter().map(|s| (s.l().clone(), s.r().clone())).collect())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Certificate::SseChain(steps) => json::object([
                ("kind".to_string(), Value::String("sse-chain".into())),
                (
                    "steps".to_string(),
                    Value::Array(
                        steps
                            .iter()
                            .map(|(l, r)| {
                                json::object([
                                    ("L".to_string(), json::nn_matrix(l)),
                                    ("R".to_string(), json::nn_matrix(r)),
                                ])
                            })
                            .collect(),
                    ),
                ),
            ]),
            Certificate::SeWitness(w) => json::object([
                ("L".to_string(), json::nn_matrix(&w.l)),
                ("R".to_string(), json::nn_matrix(&w.r)),
                ("kind".to_string(), Value::String("se-witness".into())),
                ("lag".to_string(), Value::from(w.lag)),
            ]),
        }
    }
}

pub fn parse_certificate(v: &Value) -> Result<Certificate> {
    let obj = json::as_object(v, "certificate")?;
    let kind = json::as_str(json::field(obj, "kind", "certificate")?, "kind")?;
    match kind {
        "sse-chain" => {
            let steps = json::as_array(json::field(obj, "steps", "certificate")?, "steps")?;
            if steps.is_empty() {
                return Err(Error::format("steps", "a chain needs at least one step"));
            }
            let mut out = Vec::with_capacity(steps.len());
            for (i, s) in steps.iter().enumerate() {
                let loc = format!("steps[{i}]");
                let so = json::as_object(s, &loc)?;
                let l = json::parse_nn_matrix(json::field(so, "L", &loc)?, &format!("{loc}.L"))?;
                let r = json::parse_nn_matrix(json::field(so, "R", &loc)?, &format!("{loc}.R"))?;
                out.push((l, r));
            }
            Ok(Certificate::SseChain(out))
        }
        "se-witness" => {
            let l = json::parse_nn_matrix(json::field(obj, "L", "certificate")?, "L")?;
            let r = json::parse_nn_matrix(json::field(obj, "R", "certificate")?, "R")?;
            let lag = json::parse_usize(json::field(obj, "lag", "certificate")?, "lag")?;
            let lag = u32::try_from(lag).map_err(|_| Error::format("lag", "lag too large"))?;
            Ok(Certificate::SeWitness(SeWitness { l, r, lag }))
        }
        other => Err(Error::format(
            "kind",
            format!("unknown certificate kind `{other}`, expected `sse-chain` or `se-witness`"),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFailure {
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCheck {
    pub ok: bool,
    pub kind: Option<&'static str>,
    pub failures: Vec<CertificateFailure>,
}

impl CertificateCheck {
    pub fn to_json(&self) -> Value {
        json::object([
            (
                "failures".to_string(),
                Value::Array(
                    self.failures
                        .iter()
                        .map(|f| {
                            json::object([
                                ("location".to_string(), Value::String(f.location.clone())),
                                ("message".to_string(), Value::String(f.message.clone())),
                            ])
                        })
                        .collect(),
                ),
            ),
            ("kind".to_string(), self.kind.map_or(Value::Null, |k| Value::String(k.into()))),
            ("ok".to_string(), Value::Bool(self.ok)),
        ])
    }
}

fn first_difference(x: &NNMatrix, y: &NNMatrix) -> String {
    if x.shape() != y.shape() {
        return format!("{}x{} versus {}x{}", x.rows(), x.cols(), y.rows(), y.cols());
    }
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            if x.get(i, j) != y.get(i, j) {
                return format!("entry ({i},{j}) is {} versus {}", x.get(i, j), y.get(i, j));
            }
        }
    }
    "equal".into()
}

/// Checks a certificate, optionally against endpoints `a` and `b`. Every
/// problem, malformed input included, is reported with a location.
pub fn check_certificate(v: &Value, a: Option<&NNMatrix>, b: Option<&NNMatrix>) -> CertificateCheck {
    let mut failures = Vec::new();
    let mut fail = |location: String, message: String| failures.push(CertificateFailure { location, message });
    let cert = match parse_certificate(v) {
        Ok(c) => c,
        Err(Error::Format { location, message }) => {
            fail(location, message);
            return CertificateCheck {
                ok: false,
                kind: None,
                failures,
            };
        }
        Err(e) => {
            fail("certificate".into(), e.to_string());
            return CertificateCheck {
                ok: false,
                kind: None,
                failures,
            };
        }
    };
    let kind = match &cert {
        Certificate::SseChain(steps) => {
            let mut prev: Option<NNMatrix> = None;
            for (i, (l, r)) in steps.iter().enumerate() {
                let loc = format!("steps[{i}]");
                if l.rows() != r.cols() || l.cols() != r.rows() {
                    fail(
                        loc,
                        format!(
                            "L is {}x{} and R is {}x{}; R must be {}x{}",
                            l.rows(),
                            l.cols(),
                            r.rows(),
                            r.cols(),
                            l.cols(),
                            l.rows()
                        ),
                    );
                    prev = None;
                    continue;
                }
                let lr = l * r;
                if i == 0 {
                    if let Some(a) = a {
                        if &lr != a {
                            fail(format!("{loc}.L"), format!("LR does not equal A: {}", first_difference(&lr, a)));
                        }
                    }
                }
                if let Some(p) = &prev {
                    if p != &lr {
                        fail(
                            loc.clone(),
                            format!("LR does not equal RL of the previous step: {}", first_difference(&lr, p)),
                        );
                    }
                }
                let rl = r * l;
                if i + 1 == steps.len() {
                    if let Some(b) = b {
                        if &rl != b {
                            fail(format!("{loc}.R"), format!("RL does not equal B: {}", first_difference(&rl, b)));
                        }
                    }
                }
                prev = Some(rl);
            }
            "sse-chain"
        }
        Certificate::SeWitness(w) => {
            match (a, b) {
                (Some(a), Some(b)) => match verify_shift_equivalence(a, b, w) {
                    Ok(rep) => {
                        for c in rep.checks.iter().filter(|c| !c.holds) {
                            let m = &c.mismatches[0];
                            fail(
                                c.equation.to_string(),
                                format!(
                                    "entry ({},{}): left side {}, right side {}",
                                    m.row, m.col, m.expected, m.actual
                                ),
                            );
                        }
                    }
                    Err(e) => fail("certificate".into(), e.to_string()),
                },
                _ => fail(
                    "certificate".into(),
                    "an se-witness can only be checked against both A and B".into(),
                ),
            }
            "se-witness"
        }
    };
    CertificateCheck {
        ok: failures.is_empty(),
        kind: Some(kind),
        failures,
    }
}
