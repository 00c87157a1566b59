//! Parametrized realization matrices: evaluation at exact parameter points,
//! component membership and deterministic sampling.

mod expr;
mod family;
mod sample;

pub use expr::ParamExpr;
pub use family::{classify_point, instantiate, verify_realizes, ParameterPoint, PointClass, RealizationFamily};
pub use sample::sample_component;

use crate::error::{Error, Result};

const BUILTIN: [(&str, &str); 4] = [
    ("zacharias", include_str!("../../data/families/zacharias.json")),
    ("c2", include_str!("../../data/families/c2.json")),
    ("m1", include_str!("../../data/families/m1.json")),
    ("m2", include_str!("../../data/families/m2.json")),
];

/// Names accepted by [`builtin_family`].
pub fn family_names() -> impl Iterator<Item = &'static str> {
    BUILTIN.iter().map(|(n, _)| *n)
}

/// One of the bundled families, by name.
pub fn builtin_family(name: &str) -> Result<RealizationFamily> {
    let (_, text) = BUILTIN
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Unknown { kind: "family", name: name.to_string() })?;
    let v: serde_json::Value = serde_json::from_str(text).expect("bundled family is valid JSON");
    RealizationFamily::from_json(&v)
}
