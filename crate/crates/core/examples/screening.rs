//! Combinatorial screens on weak-combinatorics vectors: the reduced
//! characteristic polynomial and the multiplicity lemma.

use arrlab::arrangement::WeakCombinatorics;
use arrlab::matroid::{characteristic_polynomial, nonfree_by_multiplicity};

fn main() -> arrlab::Result<()> {
    let mut inputs: Vec<String> = std::env::args().skip(1).collect();
    if inputs.is_empty() {
        inputs = ["(10;21,1,0,0,0,1)", "(11;19,5,0,0,0,1)", "(12;26,4,0,0,0,0,1)", "(13;16,6,4,2)", "(15;24,12,0,0,3)"]
            .map(String::from)
            .to_vec();
    }
    for s in inputs {
        let w = WeakCombinatorics::parse(&s)?;
        let chi = characteristic_polynomial(&w);
        println!("{:<28} chi_0 = {:<14} {}", w.to_string(), chi.reduced_string(), nonfree_by_multiplicity(&w));
    }
    Ok(())
}
