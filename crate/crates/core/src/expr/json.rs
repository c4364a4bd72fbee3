//! JSON fixtures: matrices as arrays of arrays of expression strings and
//! substitutions as `{"var": "expr"}` objects.

use serde_json::{Map, Value};

use crate::algebra::{Matrix, RatFunc, Substitution, Var};

use super::lower::{document_field, lower_in, ExprError};
use super::parse::parse_expr;
use super::print::print_canonical;

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|e| Value::String(print_canonical(e)))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn as_str(v: &Value) -> Result<&str, ExprError> {
    v.as_str()
        .ok_or_else(|| ExprError::Json(format!("expected an expression string, got {v}")))
}

/// Lowers a list of expression strings as one document.
pub fn exprs_from_strs(items: &[&str]) -> Result<Vec<RatFunc>, ExprError> {
    let asts = items
        .iter()
        .map(|s| parse_expr(s))
        .collect::<Result<Vec<_>, _>>()?;
    let field = document_field(asts.iter())?;
    asts.iter().map(|a| lower_in(a, field)).collect()
}

pub fn exprs_to_json(items: &[RatFunc]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|e| Value::String(print_canonical(e)))
            .collect(),
    )
}

pub fn exprs_from_json(v: &Value) -> Result<Vec<RatFunc>, ExprError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ExprError::Json("expected an array of expressions".into()))?;
    let strs = arr.iter().map(as_str).collect::<Result<Vec<_>, _>>()?;
    exprs_from_strs(&strs)
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix, ExprError> {
    let rows = v
        .as_array()
        .ok_or_else(|| ExprError::Json("matrix must be an array of rows".into()))?;
    let mut shape = Vec::with_capacity(rows.len());
    let mut flat = Vec::new();
    for r in rows {
        let r = r
            .as_array()
            .ok_or_else(|| ExprError::Json("matrix row must be an array".into()))?;
        shape.push(r.len());
        for e in r {
            flat.push(as_str(e)?);
        }
    }
    let cols = shape.first().copied().unwrap_or(0);
    if shape.iter().any(|&c| c != cols) {
        return Err(ExprError::Json("ragged matrix rows".into()));
    }
    let entries = exprs_from_strs(&flat)?;
    Ok(Matrix::new(rows.len(), cols, entries)?)
}

pub fn subst_to_json(s: &Substitution) -> Value {
    let mut pairs: Vec<(Var, String)> = s.mapped().map(|(v, e)| (v, print_canonical(e))).collect();
    pairs.sort_by(|a, b| a.0.canonical_cmp(b.0));
    let mut map = Map::new();
    for (v, e) in pairs {
        map.insert(v.name().to_string(), Value::String(e));
    }
    Value::Object(map)
}

/// Reads `{"var": "expr"}`; variables not listed are left unmapped.
pub fn subst_from_json(v: &Value) -> Result<Substitution, ExprError> {
    let obj = v
        .as_object()
        .ok_or_else(|| ExprError::Json("substitution must be an object".into()))?;
    let keys: Vec<&String> = obj.keys().collect();
    let strs = obj.values().map(as_str).collect::<Result<Vec<_>, _>>()?;
    let images = exprs_from_strs(&strs)?;
    let mut s = Substitution::new();
    for (k, img) in keys.into_iter().zip(images) {
        s.insert(Var::new(k)?, img);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_ratfunc;

    #[test]
    fn matrix_round_trip() {
        let v = serde_json::json!([["x1", "x2"], ["-a*x2", "-x1"]]);
        let m = matrix_from_json(&v).unwrap();
        assert_eq!(matrix_to_json(&m), v);
        assert!(matrix_from_json(&serde_json::json!([["x"], ["y", "z"]])).is_err());
    }

    #[test]
    fn substitution_round_trip() {
        let v = serde_json::json!({"x": "1/z", "y": "y/(x1^2 - a*x2^2)"});
        let s = subst_from_json(&v).unwrap();
        assert_eq!(
            s.image(Var::named("x")),
            Some(parse_ratfunc("1/z").unwrap())
        );
        // the canonical denominator has leading graded-lex coefficient 1
        let canon = serde_json::json!({"x": "1/z", "y": "-y/(-x1^2 + a*x2^2)"});
        assert_eq!(subst_to_json(&s), canon);
    }
}
