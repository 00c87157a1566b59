//! Samples exact points on each component of a bundled family and reports the
//! syzygy data of the arrangement at every point.
//!
//! cargo run --release --example realize -- m1 2

use arrlab::realization::{builtin_family, classify_point, instantiate, sample_component};
use arrlab::syzygy::resolution;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map(String::as_str).unwrap_or("m2");
    let count: usize = args.get(1).map(|c| c.parse()).transpose()?.unwrap_or(1);
    let f = builtin_family(name)?;
    let mut comps: Vec<String> = f.components.iter().map(|(n, _)| n.clone()).collect();
    if comps.len() > 1 {
        comps.push("singular".into());
    }
    for c in comps {
        for p in sample_component(&f, &c, count, 1)? {
            let a = instantiate(&f, &p)?;
            let s = resolution(&a, None)?.summary;
            let rel: Vec<u32> = s.relation_degrees.iter().map(|r| r.ar).collect();
            println!("{c:>10}  {p}  {}  exponents {:?}  relations {:?}", classify_point(&f, &p)?, s.exponents, rel);
        }
    }
    Ok(())
}
