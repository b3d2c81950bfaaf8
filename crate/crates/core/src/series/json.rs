//! JSON form of a series:
//! `{"vars": [..], "weights": [..], "bound": N, "terms": [{"exp": [..], "coeff": ..}]}`,
//! plus `"caps"` when the grading has them. Terms are sorted lexicographically
//! by exponent, so re-serialization is byte-identical.

use serde_json::{json, Value};

use super::{Grading, MSeries};
use crate::coeff::json::{as_array, as_i64, as_object, field};
use crate::coeff::{scalar_from_json, scalar_to_json, JsonError};

fn u32_list(v: &Value) -> Result<Vec<u32>, JsonError> {
    as_array(v)?
        .iter()
        .map(|x| {
            let n = as_i64(x)?;
            u32::try_from(n)
                .map_err(|_| JsonError(format!("expected non-negative integer, found {n}")))
        })
        .collect()
}

pub fn grading_to_json(g: &Grading) -> Value {
    let mut v = json!({
        "vars": g.vars(),
        "weights": g.weights(),
        "bound": g.bound(),
    });
    if let Some(caps) = g.caps() {
        v["caps"] = json!(caps);
    }
    v
}

pub fn grading_from_json(v: &Value) -> Result<Grading, JsonError> {
    let obj = as_object(v)?;
    let vars: Vec<String> = as_array(field(obj, "vars")?)?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| JsonError(format!("expected variable name, found {x}")))
        })
        .collect::<Result<_, _>>()?;
    let weights = u32_list(field(obj, "weights")?)?;
    let bound = u32_list(&json!([field(obj, "bound")?]))?[0];
    let g = match obj.get("caps") {
        Some(c) => Grading::with_caps(vars, weights, bound, u32_list(c)?),
        None => Grading::new(vars, weights, bound),
    };
    g.map_err(|e| JsonError(e.to_string()))
}

pub fn series_to_json(s: &MSeries) -> Value {
    let mut v = grading_to_json(s.grading());
    v["terms"] = s
        .terms()
        .map(|(e, c)| json!({"exp": e, "coeff": scalar_to_json(c)}))
        .collect();
    v
}

pub fn series_from_json(v: &Value) -> Result<MSeries, JsonError> {
    let g = grading_from_json(v)?;
    let obj = as_object(v)?;
    let mut terms = Vec::new();
    for t in as_array(field(obj, "terms")?)? {
        let t = as_object(t)?;
        let e = u32_list(field(t, "exp")?)?;
        if !g.admits(&e) {
            return Err(JsonError(format!("exponent {e:?} outside the truncation")));
        }
        terms.push((e, scalar_from_json(field(t, "coeff")?)?));
    }
    MSeries::from_terms(&g, terms).map_err(|e| JsonError(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::MotiveScalar;

    #[test]
    fn round_trip_is_byte_identical() {
        let g = Grading::with_caps(["s", "Q"], vec![1, 0], 2, vec![2, 4]).unwrap();
        let f = MSeries::from_terms(
            &g,
            [
                (vec![1, 1], MotiveScalar::v()),
                (vec![0, 2], MotiveScalar::from_int(-3)),
            ],
        )
        .unwrap();
        let text = series_to_json(&f).to_string();
        let back = series_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, f);
        assert_eq!(series_to_json(&back).to_string(), text);
        assert!(text.find("[0,2]").unwrap() < text.find("[1,1]").unwrap());
    }
}
