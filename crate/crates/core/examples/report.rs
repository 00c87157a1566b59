//! The JSON analysis report for one arrangement file (default: triangle).

use arrlab::arrangement::read_arrangement;
use arrlab::cli::{analyze, to_json_string, AnalyzeOptions};

fn main() -> arrlab::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/triangle.json").to_string());
    let r = analyze(&read_arrangement(&path)?, &AnalyzeOptions::default())?;
    print!("{}", to_json_string(&serde_json::to_value(&r).unwrap()));
    Ok(())
}
