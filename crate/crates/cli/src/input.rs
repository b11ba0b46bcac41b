use std::fs;

use quivershift::gradedmod::{build_context, FactorizationContext, TruncatedGradedModule};
use quivershift::{json, Error, IntMatrix, NNMatrix, Quiver, Result};
use serde_json::Value;

/// Reads an argument that is either inline JSON or a path to a JSON file.
pub fn load(arg: &str, what: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        return json::parse(arg, what);
    }
    let text = fs::read_to_string(arg)
        .map_err(|e| Error::format(format!("{what} ({arg})"), format!("cannot read file: {e}")))?;
    json::parse(&text, &format!("{what} ({arg})"))
}

pub fn nn_matrix(arg: &str, what: &str) -> Result<NNMatrix> {
    json::parse_nn_matrix(&load(arg, what)?, what)
}

pub fn int_matrix(arg: &str, what: &str) -> Result<IntMatrix> {
    json::parse_int_matrix(&load(arg, what)?, what)
}

/// A quiver object, or an incidence matrix.
pub fn quiver(arg: &str, what: &str) -> Result<Quiver> {
    let v = load(arg, what)?;
    if v.is_array() {
        Quiver::from_matrix(&json::parse_nn_matrix(&v, what)?)
    } else {
        Quiver::from_json(&v, what)
    }
}

pub fn module(arg: &str, what: &str) -> Result<TruncatedGradedModule> {
    TruncatedGradedModule::from_json(&load(arg, what)?, what)
}

pub fn context(l: &str, r: &str) -> Result<FactorizationContext> {
    build_context(&nn_matrix(l, "L")?, &nn_matrix(r, "R")?)
}

/// Matrix given by a flag, or else by a field of a document.
pub fn matrix_from(flag: Option<&str>, doc: Option<&Value>, key: &str) -> Result<NNMatrix> {
    match (flag, doc) {
        (Some(arg), _) => nn_matrix(arg, key),
        (None, Some(doc)) => {
            let obj = json::as_object(doc, "input")?;
            json::parse_nn_matrix(json::field(obj, key, "input")?, key)
        }
        (None, None) => Err(Error::InvalidArgument(format!("matrix {key} is required"))),
    }
}
