use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::expr::ParamExpr;
use crate::arrangement::{canonical_projective, field_from_json, field_to_json, Arrangement};
use crate::error::{Error, Result};
use crate::exactnum::{FieldElement, QuadField};
use crate::matroid::{matroid_from_arrangement, matroid_to_json, parse_matroid, Matroid3};

/// A parametrized realization matrix with its defining equations.
#[derive(Clone, Debug)]
pub struct RealizationFamily {
    pub name: String,
    pub parameters: Vec<String>,
    pub base_field: Arc<QuadField>,
    /// Three rows; column `j` is the normal vector of line `j`.
    pub matrix: [Vec<ParamExpr>; 3],
    /// Must all vanish.
    pub constraints: Vec<ParamExpr>,
    /// Named components, each the common zero set of its expressions.
    pub components: Vec<(String, Vec<ParamExpr>)>,
    /// Must not vanish.
    pub exclusions: Vec<ParamExpr>,
    pub target_matroid: Matroid3,
}

/// Values for the family's parameters, in parameter order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterPoint {
    pub names: Vec<String>,
    pub values: Vec<FieldElement>,
}

impl ParameterPoint {
    pub fn get(&self, name: &str) -> Option<&FieldElement> {
        self.names.iter().position(|n| n == name).map(|i| &self.values[i])
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.names.iter().zip(&self.values).map(|(n, v)| format!("{n}={v}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Components containing a point; more than one means the singular locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClass {
    pub components: Vec<String>,
}

impl PointClass {
    pub fn is_singular(&self) -> bool {
        self.components.len() >= 2
    }

    /// Component names, followed by `SingularLocus` when applicable.
    pub fn labels(&self) -> Vec<String> {
        let mut out = self.components.clone();
        if self.is_singular() {
            out.push("SingularLocus".into());
        }
        out
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

fn exprs(v: Option<&Value>, k: &Arc<QuadField>, params: &[String], what: &str) -> Result<Vec<ParamExpr>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    v.as_array()
        .ok_or_else(|| Error::MalformedInput(format!("`{what}` must be a list of expressions")))?
        .iter()
        .map(|e| {
            let s = e.as_str().ok_or_else(|| Error::MalformedInput(format!("`{what}` entries are strings")))?;
            ParamExpr::parse(s, k, params)
        })
        .collect()
}

impl RealizationFamily {
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::MalformedInput(format!("family file: {m}"));
        let name = v.get("name").and_then(Value::as_str).ok_or_else(|| bad("missing `name`"))?.to_string();
        let parameters: Vec<String> = v
            .get("parameters")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `parameters`"))?
            .iter()
            .map(|p| p.as_str().map(str::to_string).ok_or_else(|| bad("parameter names are strings")))
            .collect::<Result<_>>()?;
        let k = field_from_json(v.get("field"))?;
        let rows = v
            .get("matrix")
            .and_then(Value::as_array)
            .filter(|r| r.len() == 3)
            .ok_or_else(|| bad("`matrix` needs 3 rows"))?;
        let parsed: Vec<Vec<ParamExpr>> =
            rows.iter().map(|r| exprs(Some(r), &k, &parameters, "matrix")).collect::<Result<_>>()?;
        let [r0, r1, r2]: [Vec<ParamExpr>; 3] = parsed.try_into().unwrap();
        if r0.len() != r1.len() || r1.len() != r2.len() {
            return Err(bad("matrix rows differ in length"));
        }
        let mut components = Vec::new();
        if let Some(c) = v.get("components") {
            let obj = c.as_object().ok_or_else(|| bad("`components` must be an object"))?;
            for (cname, defs) in obj {
                components.push((cname.clone(), exprs(Some(defs), &k, &parameters, "components")?));
            }
        }
        let target = v.get("target_nonbases").ok_or_else(|| bad("missing `target_nonbases`"))?;
        let target_matroid = parse_matroid(&json!({"n": r0.len(), "nonbases": target}))?;
        Ok(RealizationFamily {
            name,
            constraints: exprs(v.get("constraints"), &k, &parameters, "constraints")?,
            exclusions: exprs(v.get("exclusions"), &k, &parameters, "exclusions")?,
            parameters,
            base_field: k,
            matrix: [r0, r1, r2],
            components,
            target_matroid,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::MalformedInput(format!("invalid JSON: {e}")))?;
        Self::from_json(&v)
    }

    pub fn to_json(&self) -> Value {
        let src = |v: &[ParamExpr]| Value::Array(v.iter().map(|e| Value::String(e.source().into())).collect());
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("parameters".into(), json!(self.parameters));
        if let Some(f) = field_to_json(&self.base_field) {
            m.insert("field".into(), f);
        }
        m.insert("matrix".into(), Value::Array(self.matrix.iter().map(|r| src(r)).collect()));
        m.insert("constraints".into(), src(&self.constraints));
        let comps: Map<String, Value> = self.components.iter().map(|(n, e)| (n.clone(), src(e))).collect();
        m.insert("components".into(), Value::Object(comps));
        m.insert("exclusions".into(), src(&self.exclusions));
        m.insert("target_nonbases".into(), matroid_to_json(&self.target_matroid)["nonbases"].clone());
        Value::Object(m)
    }

    pub fn num_lines(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn component(&self, name: &str) -> Option<&[ParamExpr]> {
        self.components.iter().find(|(n, _)| n == name).map(|(_, e)| e.as_slice())
    }

    /// Builds a point from `name=value` assignments; values are field constants.
    pub fn point(&self, assignments: &[(String, String)]) -> Result<ParameterPoint> {
        let mut values = Vec::with_capacity(self.parameters.len());
        for p in &self.parameters {
            let (_, v) = assignments
                .iter()
                .find(|(n, _)| n == p)
                .ok_or_else(|| Error::MalformedInput(format!("no value for parameter `{p}`")))?;
            values.push(ParamExpr::parse_constant(v, &self.base_field)?);
        }
        if let Some((n, _)) = assignments.iter().find(|(n, _)| !self.parameters.contains(n)) {
            return Err(Error::MalformedInput(format!("family `{}` has no parameter `{n}`", self.name)));
        }
        Ok(ParameterPoint { names: self.parameters.clone(), values })
    }

    pub fn point_from_values(&self, values: Vec<FieldElement>) -> ParameterPoint {
        assert_eq!(values.len(), self.parameters.len());
        ParameterPoint { names: self.parameters.clone(), values }
    }

    fn check_constraints(&self, p: &ParameterPoint) -> Result<()> {
        for c in &self.constraints {
            if !c.vanishes(&p.values)? {
                return Err(Error::ConstraintViolated(c.source().into()));
            }
        }
        Ok(())
    }
}

/// Evaluates the matrix at `p` and returns the arrangement of its columns.
pub fn instantiate(f: &RealizationFamily, p: &ParameterPoint) -> Result<Arrangement> {
    f.check_constraints(p)?;
    for e in &f.exclusions {
        if e.vanishes(&p.values)? {
            return Err(Error::ExcludedParameter(e.source().into()));
        }
    }
    let n = f.num_lines();
    let mut cols: Vec<[FieldElement; 3]> = Vec::with_capacity(n);
    for j in 0..n {
        cols.push([f.matrix[0][j].eval(&p.values)?, f.matrix[1][j].eval(&p.values)?, f.matrix[2][j].eval(&p.values)?]);
    }
    let canon: Vec<Option<[FieldElement; 3]>> = cols.iter().map(canonical_projective).collect();
    for i in 0..n {
        if canon[i].is_none() {
            return Err(Error::DegenerateLines(i, i));
        }
        for j in 0..i {
            if canon[i] == canon[j] {
                return Err(Error::DegenerateLines(j, i));
            }
        }
    }
    Arrangement::new(&f.base_field, format!("{}@{}", f.name, p), cols)
}

/// Components of the family containing `p`.
pub fn classify_point(f: &RealizationFamily, p: &ParameterPoint) -> Result<PointClass> {
    f.check_constraints(p)?;
    let mut components = Vec::new();
    for (name, defs) in &f.components {
        let mut inside = true;
        for d in defs {
            inside &= d.vanishes(&p.values)?;
        }
        if inside {
            components.push(name.clone());
        }
    }
    Ok(PointClass { components })
}

/// Whether the arrangement's concurrent triples are exactly the non-bases of `m`.
pub fn verify_realizes(a: &Arrangement, m: &Matroid3) -> Result<bool> {
    if a.len() != m.n() {
        return Err(Error::SizeMismatch { arrangement: a.len(), matroid: m.n() });
    }
    match matroid_from_arrangement(a) {
        Ok(r) => Ok(r.nonbases() == m.nonbases()),
        Err(Error::Pencil) => Ok(false),
        Err(e) => Err(e),
    }
}
