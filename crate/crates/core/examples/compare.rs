//! Pair verdicts: numerical Terao witness and weak / classical / strong Ziegler
//! pairs. Defaults to QA vs QB and L1 vs L2.

use arrlab::arrangement::read_arrangement;
use arrlab::cli::{compare, AnalyzeOptions};

fn main() -> arrlab::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs: Vec<(String, String)> = match args.as_slice() {
        [a, b] => vec![(a.clone(), b.clone())],
        _ => [("qa", "qb"), ("l1", "l2")]
            .iter()
            .map(|(a, b)| (format!("{data}/{a}.json"), format!("{data}/{b}.json")))
            .collect(),
    };
    for (a, b) in pairs {
        let v = compare(&read_arrangement(&a)?, &read_arrangement(&b)?, &AnalyzeOptions::default())?;
        print!("{}", v.to_text());
        println!();
    }
    Ok(())
}
