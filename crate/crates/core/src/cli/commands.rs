use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::report::{analyze, charpoly_report, filters, AnalyzeOptions};
use super::verdict::compare;
use super::{error_object, file_stem_for, Output, SCHEMA};
use crate::arrangement::{
    arrangement_to_json, parse_arrangement, read_arrangement, weak_combinatorics, WeakCombinatorics,
};
use crate::error::{Error, Result};
use crate::matroid::{
    divisionally_free_rank3, matroid_from_arrangement, matroid_to_json, matroids_isomorphic, parse_matroid,
    weak_combinatorics_of_matroid, Matroid3,
};
use crate::realization::{
    builtin_family, classify_point, instantiate, sample_component, verify_realizes, ParameterPoint, RealizationFamily,
};

fn read_json(path: &Path) -> Result<Value> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| Error::MalformedInput(format!("{}: invalid JSON: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    let io = |e: std::io::Error| Error::Io { path: path.display().to_string(), message: e.to_string() };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io)?;
    }
    fs::write(path, super::to_json_string(v)).map_err(io)
}

pub fn cmd_analyze(path: &Path, opts: &AnalyzeOptions) -> Result<Output> {
    let r = analyze(&read_arrangement(path)?, opts)?;
    Ok(Output::new(serde_json::to_value(&r).unwrap(), r.to_text()))
}

/// Analyzes every `*.json` arrangement in `dir` in parallel, writing one report
/// per input into `out`, named after the arrangement label.
pub fn cmd_batch(dir: &Path, out: &Path, opts: &AnalyzeOptions) -> Result<Output> {
    let io = |e: std::io::Error| Error::Io { path: dir.display().to_string(), message: e.to_string() };
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json") && p.is_file())
        .collect();
    files.sort();
    let results: Vec<(PathBuf, Result<(String, PathBuf)>)> = files
        .par_iter()
        .map(|f| {
            let r = read_arrangement(f).and_then(|a| analyze(&a, opts)).and_then(|r| {
                let target = out.join(format!("{}.json", file_stem_for(&r.label)));
                write_json(&target, &serde_json::to_value(&r).unwrap())?;
                Ok((r.label, target))
            });
            (f.clone(), r)
        })
        .collect();
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut code = 0;
    for (f, r) in results {
        match r {
            Ok((label, target)) => {
                let _ = writeln!(text, "ok    {} -> {}", f.display(), target.display());
                entries.push(
                    json!({"input": f.display().to_string(), "label": label, "report": target.display().to_string()}),
                );
            }
            Err(e) => {
                code = code.max(e.exit_code());
                let _ = writeln!(text, "fail  {}: {e}", f.display());
                entries.push(json!({"input": f.display().to_string(), "error": error_object(&e)["error"]}));
            }
        }
    }
    Ok(Output { json: json!({"schema": SCHEMA, "results": entries}), text, code })
}

pub fn cmd_compare(a: &Path, b: &Path, opts: &AnalyzeOptions) -> Result<Output> {
    let v = compare(&read_arrangement(a)?, &read_arrangement(b)?, opts)?;
    Ok(Output::new(serde_json::to_value(&v).unwrap(), v.to_text()))
}

/// What a matroid-level input can be: a file holding a matroid or an
/// arrangement, or a bare weak-combinatorics vector.
enum Source {
    Weak(WeakCombinatorics),
    Matroid { label: String, m: Matroid3 },
}

fn source(arg: &str) -> Result<Source> {
    let t = arg.trim();
    if t.starts_with('(') || (t.contains(';') && !Path::new(t).exists()) {
        return Ok(Source::Weak(WeakCombinatorics::parse(t)?));
    }
    let path = Path::new(t);
    let v = read_json(path)?;
    if v.get("nonbases").is_some() {
        let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        return Ok(Source::Matroid { label, m: parse_matroid(&v)? });
    }
    let a = parse_arrangement(&v)?;
    Ok(Source::Matroid { label: a.label().to_string(), m: matroid_from_arrangement(&a)? })
}

pub enum MatroidCommand {
    FromArrangement(PathBuf),
    Validate(PathBuf),
    Charpoly(String),
    Iso(PathBuf, PathBuf),
    Filters(String),
}

fn matroid_file(path: &Path) -> Result<(String, Matroid3)> {
    match source(&path.display().to_string())? {
        Source::Matroid { label, m } => Ok((label, m)),
        Source::Weak(_) => unreachable!("paths never parse as vectors"),
    }
}

pub fn cmd_matroid(cmd: &MatroidCommand) -> Result<Output> {
    match cmd {
        MatroidCommand::FromArrangement(p) => {
            let a = read_arrangement(p)?;
            let m = matroid_from_arrangement(&a)?;
            let w = weak_combinatorics_of_matroid(&m)?;
            let df = divisionally_free_rank3(&m)?;
            let text = format!(
                "{}: {} elements, {} non-bases, W {w}, divisionally free {df}\n",
                a.label(),
                m.n(),
                m.nonbases().len()
            );
            let v = json!({
                "schema": SCHEMA,
                "label": a.label(),
                "matroid": matroid_to_json(&m),
                "weak_combinatorics": w.to_string(),
                "divisionally_free": df,
            });
            Ok(Output::new(v, text))
        }
        MatroidCommand::Validate(p) => {
            let v = read_json(p)?;
            let m = parse_matroid(&v)?;
            let valid = m.validate();
            let mut out = json!({"schema": SCHEMA, "n": m.n(), "nonbases": m.nonbases().len(), "valid": valid});
            if valid {
                out["weak_combinatorics"] = json!(weak_combinatorics_of_matroid(&m)?.to_string());
            }
            Ok(Output::new(out, format!("{}: {}\n", p.display(), if valid { "valid" } else { "invalid" })))
        }
        MatroidCommand::Charpoly(arg) | MatroidCommand::Filters(arg) => {
            let (label, w, df) = match source(arg)? {
                Source::Weak(w) => (None, w, None),
                Source::Matroid { label, m } => {
                    let df =
                        matches!(cmd, MatroidCommand::Filters(_)).then(|| divisionally_free_rank3(&m)).transpose()?;
                    (Some(label), weak_combinatorics_of_matroid(&m)?, df)
                }
            };
            if !w.is_consistent() {
                return Err(Error::MalformedInput(format!(
                    "{w}: sum C(m,2) t_m = {} but C(d,2) = {}",
                    w.pair_count(),
                    w.d * w.d.saturating_sub(1) / 2
                )));
            }
            let c = charpoly_report(&w);
            let f = filters(&w, df);
            let mut text = format!("W {w}\nchi_0 = {}\n", c.chi0_factored);
            let _ = write!(text, "multiplicity lemma: {}", f.multiplicity_lemma);
            if let Some(m) = f.multiplicity {
                let _ = write!(text, " (m = {m})");
            }
            text.push('\n');
            if let Some(df) = f.divisionally_free {
                let _ = writeln!(text, "divisionally free: {df}");
            }
            let mut v = Map::new();
            v.insert("schema".into(), json!(SCHEMA));
            if let Some(l) = label {
                v.insert("label".into(), json!(l));
            }
            v.insert("weak_combinatorics".into(), json!(w.to_string()));
            v.insert("characteristic_polynomial".into(), serde_json::to_value(&c).unwrap());
            v.insert("filters".into(), serde_json::to_value(&f).unwrap());
            Ok(Output::new(Value::Object(v), text))
        }
        MatroidCommand::Iso(a, b) => {
            let ((la, ma), (lb, mb)) = (matroid_file(a)?, matroid_file(b)?);
            let w = matroids_isomorphic(&ma, &mb);
            let perm = w.as_ref().map(|p| p.iter().map(|x| x + 1).collect::<Vec<_>>());
            let text = match &perm {
                Some(p) => format!("{la} ~ {lb}: i -> {p:?} (1-based)\n"),
                None => format!("{la} and {lb} are not isomorphic\n"),
            };
            Ok(Output::new(json!({"schema": SCHEMA, "isomorphic": perm.is_some(), "permutation": perm}), text))
        }
    }
}

/// A named bundled family or a family file.
pub fn load_family(name_or_path: &str) -> Result<RealizationFamily> {
    builtin_family(name_or_path).or_else(|e| {
        if Path::new(name_or_path).is_file() {
            RealizationFamily::read(name_or_path)
        } else {
            Err(e)
        }
    })
}

pub struct RealizeRequest {
    pub family: String,
    /// Explicit `name=value` parameters.
    pub assignments: Vec<(String, String)>,
    /// `(component, count)`.
    pub sample: Option<(String, usize)>,
    pub seed: u64,
    /// Where arrangement files go; inline in the output when absent.
    pub out: Option<PathBuf>,
}

fn point_json(p: &ParameterPoint) -> Value {
    Value::Object(p.names.iter().zip(&p.values).map(|(n, v)| (n.clone(), json!(v.to_string()))).collect())
}

pub fn cmd_realize(req: &RealizeRequest) -> Result<Output> {
    let f = load_family(&req.family)?;
    let (points, tag) = match &req.sample {
        Some((comp, n)) => {
            if !req.assignments.is_empty() {
                return Err(Error::MalformedInput("give either parameter values or --sample, not both".into()));
            }
            (sample_component(&f, comp, *n, req.seed)?, comp.clone())
        }
        None => (vec![f.point(&req.assignments)?], "point".to_string()),
    };
    let mut entries = Vec::new();
    let mut text = String::new();
    for (i, p) in points.iter().enumerate() {
        let a = instantiate(&f, p)?;
        let class = classify_point(&f, p)?;
        let ok = verify_realizes(&a, &f.target_matroid)?;
        let status = if ok { "matroid-verified" } else { "matroid-mismatch" };
        let w = weak_combinatorics(&a);
        let mut e = Map::new();
        e.insert("point".into(), point_json(p));
        e.insert("components".into(), json!(class.labels()));
        e.insert("singular".into(), json!(class.is_singular()));
        e.insert("status".into(), json!(status));
        e.insert("weak_combinatorics".into(), json!(w.to_string()));
        match &req.out {
            Some(dir) => {
                let path = dir.join(format!("{}_{}_{}.json", f.name, file_stem_for(&tag), i + 1));
                write_json(&path, &arrangement_to_json(&a))?;
                e.insert("file".into(), json!(path.display().to_string()));
            }
            None => {
                e.insert("arrangement".into(), arrangement_to_json(&a));
            }
        }
        let _ = writeln!(text, "{} @ {p}: {class}  W {w}  {status}", f.name);
        entries.push(Value::Object(e));
    }
    let v = json!({
        "schema": SCHEMA,
        "family": f.name,
        "field": f.base_field.describe(),
        "sample": req.sample.as_ref().map(|(c, n)| json!({"component": c, "count": n, "seed": req.seed})),
        "points": entries,
    });
    Ok(Output::new(v, text))
}
