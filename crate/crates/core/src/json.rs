//! JSON encoding of matrices, algebras and results.
//!
//! A matrix is `{"mode": "exact" | "approx", "entries": [[...], ...]}` with
//! exact entries written as `"p/q"` strings and approximate entries as
//! numbers. An algebra is `{"generators": [matrix, ...]}` (closed under the
//! bracket on reading) or `{"basis": [matrix, ...]}`.

use serde_json::{json, Map, Value};

use crate::error::{NashError, Result};
use crate::jordan::{ElementClass, JordanTriple};
use crate::liealg::{lie_closure, LieAlgebra};
use crate::linalg::Linalg;
use crate::matrix::{Mat, Matrix, DEFAULT_TOL};
use crate::scalar::{format_q, parse_q, Q};

/// Scalars that can be written to JSON.
pub trait JsonScalar: Linalg {
    fn to_json(&self) -> Value;
}

impl JsonScalar for Q {
    fn to_json(&self) -> Value {
        Value::String(format_q(self))
    }
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

fn malformed(msg: impl Into<String>) -> NashError {
    NashError::MalformedInput(msg.into())
}

pub fn vector_to_json<T: JsonScalar>(v: &[T]) -> Value {
    Value::Array(v.iter().map(JsonScalar::to_json).collect())
}

pub fn rows_to_json<T: JsonScalar>(m: &Mat<T>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_to_json(r)).collect())
}

pub fn mat_to_json<T: JsonScalar>(m: &Mat<T>) -> Value {
    let mode = if T::EXACT { "exact" } else { "approx" };
    json!({ "mode": mode, "entries": rows_to_json(m) })
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    match m {
        Matrix::Exact(e) => mat_to_json(e),
        Matrix::Approx { m, .. } => mat_to_json(m),
    }
}

pub fn mats_to_json<T: JsonScalar>(ms: &[Mat<T>]) -> Value {
    Value::Array(ms.iter().map(mat_to_json).collect())
}

fn parse_exact_entry(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().expect("checked").into())),
        other => Err(malformed(format!("exact entry must be a \"p/q\" string, got {other}"))),
    }
}

fn parse_approx_entry(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| malformed("entry is not a finite number")),
        Value::String(s) => parse_q(s).map(|q| crate::scalar::Field::to_f64(&q)),
        other => Err(malformed(format!("approx entry must be a number, got {other}"))),
    }
}

fn parse_rows<T>(entries: &Value, f: impl Fn(&Value) -> Result<T>) -> Result<Vec<Vec<T>>> {
    let rows = entries.as_array().ok_or_else(|| malformed("\"entries\" must be an array of rows"))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| malformed("each row must be an array"))?
                .iter()
                .map(&f)
                .collect()
        })
        .collect()
}

fn check_shape<T>(rows: &[Vec<T>]) -> Result<usize> {
    let n = rows.len();
    if n == 0 {
        return Err(malformed("matrix must have at least one row"));
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(NashError::DimensionMismatch("matrix must be square".into()));
    }
    Ok(n)
}

/// Reads a matrix; `tol` is attached to approximate matrices.
pub fn matrix_from_json(v: &Value, tol: f64) -> Result<Matrix> {
    let obj = v.as_object().ok_or_else(|| malformed("matrix must be a JSON object"))?;
    let entries = obj.get("entries").ok_or_else(|| malformed("matrix is missing \"entries\""))?;
    let mode = obj.get("mode").and_then(Value::as_str).ok_or_else(|| malformed("matrix is missing \"mode\""))?;
    match mode {
        "exact" => {
            let rows = parse_rows(entries, parse_exact_entry)?;
            let n = check_shape(&rows)?;
            Matrix::exact(Mat::from_vec(n, n, rows.into_iter().flatten().collect()))
        }
        "approx" => {
            let rows = parse_rows(entries, parse_approx_entry)?;
            let n = check_shape(&rows)?;
            Matrix::approx(Mat::from_vec(n, n, rows.into_iter().flatten().collect()), tol)
        }
        other => Err(malformed(format!("unknown mode {other:?}"))),
    }
}

/// How the matrices of an algebra file are given.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraInput {
    Generators(Vec<Matrix>),
    Basis(Vec<Matrix>),
}

impl AlgebraInput {
    pub fn matrices(&self) -> &[Matrix] {
        match self {
            AlgebraInput::Generators(m) | AlgebraInput::Basis(m) => m,
        }
    }

    pub fn all_exact(&self) -> bool {
        self.matrices().iter().all(Matrix::is_exact)
    }

    /// Builds the algebra on the scalar track `T`.
    pub fn build<T: Linalg>(&self, n: usize, tol: f64) -> Result<LieAlgebra<T>> {
        let tol = if T::EXACT { 0.0 } else { tol };
        let mats: Vec<Mat<T>> = self.matrices().iter().map(T::unwrap).collect();
        match self {
            AlgebraInput::Generators(_) => lie_closure(n, &mats, tol),
            AlgebraInput::Basis(_) => LieAlgebra::from_basis(n, mats, tol),
        }
    }
}

/// Reads an algebra file; returns the ambient size alongside.
pub fn algebra_from_json(v: &Value, tol: f64) -> Result<(usize, AlgebraInput)> {
    let obj = v.as_object().ok_or_else(|| malformed("algebra must be a JSON object"))?;
    let (key, wrap): (&str, fn(Vec<Matrix>) -> AlgebraInput) = if obj.contains_key("basis") {
        ("basis", AlgebraInput::Basis)
    } else if obj.contains_key("generators") {
        ("generators", AlgebraInput::Generators)
    } else {
        return Err(malformed("algebra needs \"generators\" or \"basis\""));
    };
    let list = obj[key].as_array().ok_or_else(|| malformed(format!("\"{key}\" must be an array")))?;
    let mats = list.iter().map(|m| matrix_from_json(m, tol)).collect::<Result<Vec<_>>>()?;
    let n = match (mats.first(), obj.get("n").and_then(Value::as_u64)) {
        (Some(m), _) => m.n(),
        (None, Some(n)) => n as usize,
        (None, None) => return Err(malformed("empty algebra needs an explicit \"n\"")),
    };
    if mats.iter().any(|m| m.n() != n) {
        return Err(NashError::DimensionMismatch("algebra matrices differ in size".into()));
    }
    Ok((n, wrap(mats)))
}

pub fn algebra_to_json<T: JsonScalar>(g: &LieAlgebra<T>) -> Value {
    json!({ "n": g.n(), "basis": mats_to_json(g.basis()) })
}

pub fn class_to_json(c: &ElementClass) -> Value {
    serde_json::to_value(c).expect("plain struct")
}

pub fn triple_to_json(t: &JordanTriple) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("e".into(), matrix_to_json(&t.e));
    m.insert("h".into(), matrix_to_json(&t.h));
    m.insert("u".into(), matrix_to_json(&t.u));
    m
}

pub fn error_to_json(e: &NashError) -> Value {
    json!({ "error": e.code(), "detail": e.to_string() })
}

/// Default tolerance, overridable through `NASHKIT_TOL`.
pub fn default_tol() -> Result<f64> {
    match std::env::var("NASHKIT_TOL") {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t >= 0.0)
            .ok_or_else(|| malformed(format!("NASHKIT_TOL is not a nonnegative number: {s:?}"))),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn exact_roundtrip() {
        let m = Matrix::Exact(Mat::from_rows(vec![vec![q(-3, 6), qi(2)], vec![qi(0), q(7, 3)]]).unwrap());
        let v = matrix_to_json(&m);
        assert_eq!(v["entries"][0][0], json!("-1/2"));
        assert_eq!(v["entries"][0][1], json!("2/1"));
        assert_eq!(matrix_from_json(&v, 1e-8).unwrap(), m);
    }

    #[test]
    fn approx_roundtrip() {
        let m = Matrix::approx(Mat::from_rows(vec![vec![0.1, -2.5], vec![1e-300, 3.0]]).unwrap(), 1e-8).unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&v, 1e-8).unwrap(), m);
    }

    #[test]
    fn malformed_inputs() {
        let bad = [
            json!([1, 2]),
            json!({"mode": "exact"}),
            json!({"mode": "weird", "entries": [["1"]]}),
            json!({"mode": "exact", "entries": [["x"]]}),
            json!({"mode": "exact", "entries": []}),
            json!({"mode": "approx", "entries": [[true]]}),
        ];
        for b in bad {
            assert!(matches!(matrix_from_json(&b, 1e-8), Err(NashError::MalformedInput(_))), "{b}");
        }
        let ragged = json!({"mode": "exact", "entries": [["1", "2"]]});
        assert!(matches!(matrix_from_json(&ragged, 1e-8), Err(NashError::DimensionMismatch(_))));
    }

    #[test]
    fn algebra_inputs() {
        let e = json!({"mode": "exact", "entries": [["0", "1"], ["0", "0"]]});
        let f = json!({"mode": "exact", "entries": [["0", "0"], ["1", "0"]]});
        let (n, a) = algebra_from_json(&json!({"generators": [e, f]}), 1e-8).unwrap();
        let g: LieAlgebra<Q> = a.build(n, 1e-8).unwrap();
        assert_eq!(g.dim(), 3);
        let (n, a) = algebra_from_json(&json!({"basis": [], "n": 3}), 1e-8).unwrap();
        assert_eq!((n, a.build::<Q>(n, 0.0).unwrap().dim()), (3, 0));
        let v = algebra_to_json(&g);
        let (n2, again) = algebra_from_json(&v, 1e-8).unwrap();
        assert_eq!(again.build::<Q>(n2, 0.0).unwrap(), g);
    }
}
