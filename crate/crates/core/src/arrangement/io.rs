use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use super::Arrangement;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, FieldElement, QuadField};

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedInput(msg.into())
}

/// `{"alpha_sq_c1": "p/q", "alpha_sq_c0": "p/q"}`; absent or null means `Q`.
pub fn field_from_json(v: Option<&Value>) -> Result<Arc<QuadField>> {
    let Some(v) = v.filter(|v| !v.is_null()) else {
        return Ok(QuadField::rationals());
    };
    let get = |key: &str| -> Result<_> {
        let s =
            v.get(key).and_then(Value::as_str).ok_or_else(|| malformed(format!("field needs string key `{key}`")))?;
        parse_rational(s)
    };
    QuadField::quadratic(get("alpha_sq_c1")?, get("alpha_sq_c0")?)
}

pub fn field_to_json(k: &QuadField) -> Option<Value> {
    k.relation().map(|(c1, c0)| json!({"alpha_sq_c1": format_rational(c1), "alpha_sq_c0": format_rational(c0)}))
}

/// `["a", "b"]` meaning `a + b*alpha`. A bare string is accepted as `[s, "0/1"]`.
pub fn element_from_json(k: &Arc<QuadField>, v: &Value) -> Result<FieldElement> {
    match v {
        Value::String(s) => Ok(FieldElement::from_rational(k, parse_rational(s)?)),
        Value::Array(ab) if ab.len() == 2 => {
            let part = |x: &Value| {
                x.as_str()
                    .ok_or_else(|| malformed("coefficient parts must be rational strings"))
                    .and_then(parse_rational)
            };
            FieldElement::new(k, part(&ab[0])?, part(&ab[1])?)
                .map_err(|_| malformed("nonzero alpha part in an arrangement over Q"))
        }
        _ => Err(malformed(format!("bad coefficient {v}"))),
    }
}

pub fn element_to_json(x: &FieldElement) -> Value {
    json!([format_rational(x.a()), format_rational(x.b())])
}

/// Parses the arrangement JSON format.
pub fn parse_arrangement(v: &Value) -> Result<Arrangement> {
    let obj = v.as_object().ok_or_else(|| malformed("arrangement must be a JSON object"))?;
    let label = match obj.get("label") {
        None => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(malformed("`label` must be a string")),
    };
    let field = field_from_json(obj.get("field"))?;
    let lines = obj.get("lines").and_then(Value::as_array).ok_or_else(|| malformed("missing `lines` array"))?;
    let mut coeffs = Vec::with_capacity(lines.len());
    for (i, l) in lines.iter().enumerate() {
        let triple = l
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| malformed(format!("line {i} must have three coefficients")))?;
        coeffs.push([
            element_from_json(&field, &triple[0])?,
            element_from_json(&field, &triple[1])?,
            element_from_json(&field, &triple[2])?,
        ]);
    }
    Arrangement::new(&field, label, coeffs)
}

pub fn parse_arrangement_str(text: &str) -> Result<Arrangement> {
    let v: Value = serde_json::from_str(text).map_err(|e| malformed(format!("invalid JSON: {e}")))?;
    parse_arrangement(&v)
}

pub fn read_arrangement(path: impl AsRef<Path>) -> Result<Arrangement> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_arrangement_str(&text)
}

/// Canonical JSON: `label`, then `field` (omitted over `Q`), then the
/// canonicalized lines in order.
pub fn arrangement_to_json(a: &Arrangement) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("label".into(), Value::String(a.label().to_string()));
    if let Some(f) = field_to_json(a.field()) {
        m.insert("field".into(), f);
    }
    let lines = a.lines().iter().map(|l| Value::Array(l.coeffs().iter().map(element_to_json).collect())).collect();
    m.insert("lines".into(), Value::Array(lines));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_gaussian() {
        let text = r#"{"label":"g","field":{"alpha_sq_c1":"0/1","alpha_sq_c0":"-1/1"},
            "lines":[[["2/1","0/1"],["0/1","2/1"],["0/1","0/1"]],[["0","0"],["1","0"],["0","0"]],
                     [["0","0"],["0","0"],["1","0"]]]}"#;
        let a = parse_arrangement_str(text).unwrap();
        assert_eq!(a.len(), 3);
        let v = arrangement_to_json(&a);
        assert_eq!(v["lines"][0], json!([["1/1", "0/1"], ["0/1", "1/1"], ["0/1", "0/1"]]));
        assert_eq!(parse_arrangement(&v).unwrap(), a);
    }

    #[test]
    fn rejects_bad_input() {
        let dup =
            r#"{"lines":[[["1/1","0/1"],["0/1","0/1"],["0/1","0/1"]],[["2/1","0/1"],["0/1","0/1"],["0/1","0/1"]]]}"#;
        assert_eq!(parse_arrangement_str(dup), Err(Error::DuplicateLine(0, 1)));
        let red = r#"{"field":{"alpha_sq_c1":"0/1","alpha_sq_c0":"4/1"},"lines":[]}"#;
        assert!(matches!(parse_arrangement_str(red), Err(Error::ReducibleMinimalPolynomial { .. })));
        assert!(matches!(parse_arrangement_str("[1]"), Err(Error::MalformedInput(_))));
        let short = r#"{"lines":[[["1/1","0/1"],["0/1","0/1"]]]}"#;
        assert!(matches!(parse_arrangement_str(short), Err(Error::MalformedInput(_))));
        let over_q = r#"{"lines":[[["1/1","1/1"],["0/1","0/1"],["0/1","0/1"]]]}"#;
        assert!(matches!(parse_arrangement_str(over_q), Err(Error::MalformedInput(_))));
    }
}
