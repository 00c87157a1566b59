//! Intersection points, weak combinatorics and the defining polynomial of an
//! arrangement file (default: the bundled QA).

use arrlab::arrangement::{defining_polynomial, intersection_points, read_arrangement, weak_combinatorics};

fn main() -> arrlab::Result<()> {
    let path =
        std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/qa.json").to_string());
    let a = read_arrangement(&path)?;
    println!("{}: {} lines over {}", a.label(), a.len(), a.field().describe());
    for (i, l) in a.lines().iter().enumerate() {
        println!("  H{:<2} {l}", i + 1);
    }
    let pts = intersection_points(&a);
    for p in pts.iter().filter(|p| p.multiplicity() > 2) {
        let on: Vec<String> = p.incident.iter().map(|i| (i + 1).to_string()).collect();
        println!("  {}-fold point on H{{{}}}", p.multiplicity(), on.join(","));
    }
    let w = weak_combinatorics(&a);
    println!(
        "W = {w}, pair count {} (C(d,2) = {}), tau = {}",
        w.pair_count(),
        a.len() * (a.len() - 1) / 2,
        w.tjurina()
    );
    println!("f has {} terms", defining_polynomial(&a).num_terms());
    Ok(())
}
