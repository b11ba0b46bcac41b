//! JSON helpers shared by every file format.
//!
//! Output is compact with object keys sorted, so identical values always
//! serialize to identical bytes. Integers keep full precision.

use num_bigint::{BigInt, BigUint};
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, NNMatrix};

/// Parses JSON text, reporting syntax errors as `line L, column C`.
pub fn parse(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::format(
            format!("{what}: line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

/// Canonical compact serialization.
pub fn to_string(value: &Value) -> String {
    serde_json::to_string(value).expect("serializing a Value cannot fail")
}

pub fn biguint(x: &BigUint) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("decimal digits"))
}

pub fn bigint(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("decimal digits"))
}

pub fn object(entries: impl IntoIterator<Item = (String, Value)>) -> Value {
    Value::Object(entries.into_iter().collect::<Map<_, _>>())
}

pub fn parse_biguint(v: &Value, loc: &str) -> Result<BigUint> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigUint>()
            .map_err(|_| Error::format(loc, format!("expected a nonnegative integer, got {n}"))),
        other => Err(Error::format(loc, format!("expected a nonnegative integer, got {other}"))),
    }
}

pub fn parse_bigint(v: &Value, loc: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| Error::format(loc, format!("expected an integer, got {n}"))),
        other => Err(Error::format(loc, format!("expected an integer, got {other}"))),
    }
}

pub fn parse_usize(v: &Value, loc: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::format(loc, format!("expected a small nonnegative integer, got {v}")))
}

pub fn as_array<'a>(v: &'a Value, loc: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::format(loc, format!("expected an array, got {v}")))
}

pub fn as_object<'a>(v: &'a Value, loc: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::format(loc, format!("expected an object, got {v}")))
}

pub fn as_str<'a>(v: &'a Value, loc: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::format(loc, format!("expected a string, got {v}")))
}

pub fn field<'a>(obj: &'a Map<String, Value>, key: &str, loc: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::format(loc, format!("missing field `{key}`")))
}

pub fn nn_matrix(m: &NNMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(biguint).collect()))
            .collect(),
    )
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(bigint).collect()))
            .collect(),
    )
}

fn matrix_rows<T>(
    v: &Value,
    loc: &str,
    parse_entry: impl Fn(&Value, &str) -> Result<T>,
) -> Result<(usize, usize, Vec<T>)> {
    let rows = as_array(v, loc)?;
    let mut cols = None;
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let rloc = format!("{loc}[{i}]");
        let row = as_array(row, &rloc)?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(Error::format(rloc, format!("row has {} entries, expected {c}", row.len())))
            }
            _ => {}
        }
        for (j, x) in row.iter().enumerate() {
            entries.push(parse_entry(x, &format!("{loc}[{i}][{j}]"))?);
        }
    }
    Ok((rows.len(), cols.unwrap_or(0), entries))
}

pub fn parse_nn_matrix(v: &Value, loc: &str) -> Result<NNMatrix> {
    let (r, c, entries) = matrix_rows(v, loc, parse_biguint)?;
    NNMatrix::new(r, c, entries)
}

pub fn parse_int_matrix(v: &Value, loc: &str) -> Result<IntMatrix> {
    let (r, c, entries) = matrix_rows(v, loc, parse_bigint)?;
    let mut it = entries.into_iter();
    Ok(IntMatrix::from_fn(r, c, |_, _| it.next().expect("entry count")))
}
