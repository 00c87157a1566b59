//! Reports, pair verdicts and the command implementations behind the `arrlab`
//! binary. Every JSON document carries `"schema": 1` and is byte-stable for a
//! given input (timing is opt-in).

mod commands;
mod report;
mod verdict;

pub use commands::{
    cmd_analyze, cmd_batch, cmd_compare, cmd_matroid, cmd_realize, load_family, MatroidCommand, RealizeRequest,
};
pub use report::{
    analyze, AnalysisReport, AnalyzeOptions, CharPolyReport, FilterReport, Shifts, SyzygyReport,
    WeakCombinatoricsReport,
};
pub use verdict::{compare, Flags, PairVerdict, Side, Verdicts};

use serde_json::{json, Value};

use crate::error::Error;

pub const SCHEMA: u32 = 1;

/// Output of one command in both renderings, plus the exit code it asks for.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

impl Output {
    pub fn new(json: Value, text: String) -> Self {
        Output { json, text, code: 0 }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// `{"schema": 1, "error": {"kind", "message", "exit_code"}}`
pub fn error_object(e: &Error) -> Value {
    json!({
        "schema": SCHEMA,
        "error": {"kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code()},
    })
}

/// Labels made safe for file names: anything outside `[A-Za-z0-9_.-]` becomes `_`.
pub fn file_stem_for(label: &str) -> String {
    let s: String =
        label.chars().map(|c| if c.is_ascii_alphanumeric() || "_.-".contains(c) { c } else { '_' }).collect();
    if s.is_empty() {
        "unnamed".into()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems() {
        assert_eq!(file_stem_for("QB+"), "QB_");
        assert_eq!(file_stem_for("m1@x=1/2,y=3"), "m1_x_1_2_y_3");
        assert_eq!(file_stem_for(""), "unnamed");
    }

    #[test]
    fn error_objects_are_tagged() {
        let v = error_object(&Error::CapExceeded(7));
        assert_eq!(v["error"]["kind"], "CapExceeded");
        assert_eq!(v["error"]["exit_code"], 4);
    }
}
