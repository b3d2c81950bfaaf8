//! JSON form of coefficients:
//! `{"num": {"lowest": k, "coeffs": [..]}, "den": {..}}`, coefficients
//! ascending in `v` from `lowest`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use super::{LaurentPoly, MotiveScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed JSON: {0}")]
pub struct JsonError(pub String);

pub(crate) fn bigint_to_json(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| JsonError(format!("not an integer: {n}")))
        }
        _ => Err(JsonError(format!("expected integer, found {v}"))),
    }
}

pub(crate) fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, JsonError> {
    obj.get(key)
        .ok_or_else(|| JsonError(format!("missing field `{key}`")))
}

pub(crate) fn as_object(v: &Value) -> Result<&Map<String, Value>, JsonError> {
    v.as_object()
        .ok_or_else(|| JsonError(format!("expected object, found {v}")))
}

pub(crate) fn as_array(v: &Value) -> Result<&Vec<Value>, JsonError> {
    v.as_array()
        .ok_or_else(|| JsonError(format!("expected array, found {v}")))
}

pub(crate) fn as_i64(v: &Value) -> Result<i64, JsonError> {
    v.as_i64()
        .ok_or_else(|| JsonError(format!("expected small integer, found {v}")))
}

pub fn poly_to_json(p: &LaurentPoly) -> Value {
    json!({
        "lowest": p.lowest(),
        "coeffs": p.coeffs().iter().map(bigint_to_json).collect::<Vec<_>>(),
    })
}

pub fn poly_from_json(v: &Value) -> Result<LaurentPoly, JsonError> {
    let obj = as_object(v)?;
    let lowest = as_i64(field(obj, "lowest")?)?;
    let coeffs = as_array(field(obj, "coeffs")?)?
        .iter()
        .map(bigint_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LaurentPoly::from_coeffs(lowest, coeffs))
}

pub fn scalar_to_json(x: &MotiveScalar) -> Value {
    json!({
        "num": poly_to_json(x.numerator()),
        "den": poly_to_json(x.denominator()),
    })
}

/// Parses and canonicalizes; a non-reduced fraction is accepted and reduced.
pub fn scalar_from_json(v: &Value) -> Result<MotiveScalar, JsonError> {
    let obj = as_object(v)?;
    let num = poly_from_json(field(obj, "num")?)?;
    let den = poly_from_json(field(obj, "den")?)?;
    if den.is_zero() {
        return Err(JsonError("zero denominator".into()));
    }
    Ok(MotiveScalar::from_parts(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_json_shape() {
        let x = MotiveScalar::from_parts(
            LaurentPoly::from_i64s(3, &[1]),
            LaurentPoly::from_i64s(0, &[-1, 0, 1]),
        );
        let v = scalar_to_json(&x);
        assert_eq!(
            v.to_string(),
            r#"{"den":{"coeffs":[-1,0,1],"lowest":0},"num":{"coeffs":[1],"lowest":3}}"#
        );
        assert_eq!(scalar_from_json(&v).unwrap(), x);
    }

    #[test]
    fn big_coefficients_survive() {
        let big = BigInt::from(7).pow(60);
        let x = MotiveScalar::from_bigint(big.clone());
        let text = scalar_to_json(&x).to_string();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(scalar_from_json(&back).unwrap(), x);
        assert!(text.contains(&big.to_string()));
    }
}
