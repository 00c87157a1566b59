//! Minimal free resolution of the Milnor algebra for each arrangement file given
//! on the command line (defaults to the bundled QA, QB, L1, L2).

use std::time::Instant;

use arrlab::arrangement::read_arrangement;
use arrlab::syzygy::resolution;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut paths: Vec<String> = std::env::args().skip(1).collect();
    if paths.is_empty() {
        let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
        paths = ["qa", "qb", "l1", "l2"].iter().map(|n| format!("{data}/{n}.json")).collect();
    }
    for p in paths {
        let a = read_arrangement(&p)?;
        let t = Instant::now();
        let r = resolution(&a, None)?;
        let s = &r.summary;
        println!("{}: {}", a.label(), s.shape());
        println!(
            "  exponents {:?}, mdr {}, {}, tau {}  ({:.1?})",
            s.exponents,
            s.mdr,
            s.classification,
            s.tjurina,
            t.elapsed()
        );
    }
    Ok(())
}
