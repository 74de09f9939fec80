//! JSON encodings shared by all file formats.
//!
//! Rationals are strings `"p/q"`; cyclotomic numbers are
//! `{"order": N, "coeffs": {"e": "p/q", ...}}` with exponents as decimal
//! strings and absent exponents meaning zero. Objects serialize with
//! sorted keys, so emitted files are byte-stable.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cyclo::{phi, rat_from_str, rat_to_string, Cyclotomic, Rational};
use crate::matrix::Matrix;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("expected {expected} at {at}")]
    Expected { expected: &'static str, at: String },
    #[error("bad number in {at}: {detail}")]
    BadNumber { at: String, detail: String },
}

fn expected(what: &'static str, at: &str) -> JsonError {
    JsonError::Expected { expected: what, at: at.to_string() }
}

pub fn cyc_to_value(x: &Cyclotomic) -> Value {
    let mut coeffs = Map::new();
    for (k, c) in x.coeffs().iter().enumerate() {
        if !num_traits::Zero::is_zero(c) {
            coeffs.insert(k.to_string(), Value::String(rat_to_string(c)));
        }
    }
    json!({ "order": x.order(), "coeffs": Value::Object(coeffs) })
}

pub fn cyc_from_value(v: &Value, at: &str) -> Result<Cyclotomic, JsonError> {
    let obj = v.as_object().ok_or_else(|| expected("cyclotomic object", at))?;
    let order = obj
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| expected("positive integer \"order\"", at))?;
    if order == 0 {
        return Err(expected("positive integer \"order\"", at));
    }
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_object)
        .ok_or_else(|| expected("\"coeffs\" object", at))?;
    let deg = phi(order);
    let mut terms: Vec<(i64, Rational)> = Vec::new();
    for (k, val) in coeffs {
        let e: u64 = k.parse().map_err(|_| JsonError::BadNumber {
            at: format!("{at}.coeffs[{k}]"),
            detail: "exponent must be a decimal string".into(),
        })?;
        if e >= deg {
            return Err(JsonError::BadNumber {
                at: format!("{at}.coeffs[{k}]"),
                detail: format!("exponent {e} outside canonical range 0..{deg}"),
            });
        }
        let s = val
            .as_str()
            .ok_or_else(|| expected("rational string", &format!("{at}.coeffs[{k}]")))?;
        let r = rat_from_str(s).map_err(|e| JsonError::BadNumber {
            at: format!("{at}.coeffs[{k}]"),
            detail: e.to_string(),
        })?;
        terms.push((e as i64, r));
    }
    Ok(Cyclotomic::from_terms(order, &terms))
}

pub fn cyc_vec_to_value(v: &[Cyclotomic]) -> Value {
    Value::Array(v.iter().map(cyc_to_value).collect())
}

pub fn cyc_vec_from_value(v: &Value, at: &str) -> Result<Vec<Cyclotomic>, JsonError> {
    let arr = v.as_array().ok_or_else(|| expected("array", at))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| cyc_from_value(x, &format!("{at}[{i}]")))
        .collect()
}

pub fn cyc_matrix_to_value(m: &Matrix<Cyclotomic>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| cyc_to_value(m.at(r, c))).collect()))
            .collect(),
    )
}

/// Reads a rectangular matrix; ragged input is a shape error.
pub fn cyc_matrix_from_value(v: &Value, at: &str) -> Result<Matrix<Cyclotomic>, JsonError> {
    let rows = v.as_array().ok_or_else(|| expected("array of rows", at))?;
    let mut data: Vec<Vec<Cyclotomic>> = Vec::with_capacity(rows.len());
    let mut width: Option<usize> = None;
    for (i, row) in rows.iter().enumerate() {
        let entries = cyc_vec_from_value(row, &format!("{at}[{i}]"))?;
        if let Some(w) = width {
            if entries.len() != w {
                return Err(expected("rectangular matrix", at));
            }
        } else {
            width = Some(entries.len());
        }
        data.push(entries);
    }
    Ok(Matrix::from_rows(data))
}

/// Canonical text form: pretty, sorted keys, trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    #[test]
    fn cyclotomic_round_trip() {
        let x = Cyclotomic::from_terms(8, &[(0, rat(1, 2)), (3, rat(-2, 3))]);
        let v = cyc_to_value(&x);
        let y = cyc_from_value(&v, "x").unwrap();
        assert_eq!(x, y);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"order\":8"));
        assert!(s.contains("\"3\":\"-2/3\""));
    }

    #[test]
    fn rejects_out_of_range_exponent() {
        let v = json!({"order": 4, "coeffs": {"2": "1/1"}});
        assert!(cyc_from_value(&v, "x").is_err());
    }

    #[test]
    fn zero_has_empty_coeffs() {
        let v = cyc_to_value(&Cyclotomic::zero());
        assert_eq!(v, json!({"order": 1, "coeffs": {}}));
    }
}
