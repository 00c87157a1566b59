//! Matroid of an arrangement, flats, divisional freeness and isomorphism tests
//! between the bundled fixtures.

use arrlab::arrangement::read_arrangement;
use arrlab::matroid::{
    divisionally_free_rank3, matroid_from_arrangement, matroids_isomorphic, read_matroid, weak_combinatorics_of_matroid,
};

fn main() -> arrlab::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let m1 = read_matroid(format!("{data}/m1.json"))?;
    println!("M1: valid {}, W {}", m1.validate(), weak_combinatorics_of_matroid(&m1)?);
    let m2 = read_matroid(format!("{data}/m2.json"))?;
    println!("M2: valid {}, W {}", m2.validate(), weak_combinatorics_of_matroid(&m2)?);

    let mut ms = Vec::new();
    for name in ["qa", "qb", "l1", "l2"] {
        let a = read_arrangement(format!("{data}/{name}.json"))?;
        let m = matroid_from_arrangement(&a)?;
        println!(
            "{:>3}: {} non-bases, divisionally free {}",
            a.label(),
            m.nonbases().len(),
            divisionally_free_rank3(&m)?
        );
        ms.push((a.label().to_string(), m));
    }
    for (x, y) in [(0, 1), (2, 3)] {
        let iso = matroids_isomorphic(&ms[x].1, &ms[y].1);
        println!("{} ~ {}: {}", ms[x].0, ms[y].0, iso.is_some());
    }
    let perm: Vec<usize> = (0..12).rev().collect();
    println!("M1 ~ relabeled M1: {:?}", matroids_isomorphic(&m1, &m1.relabeled(&perm)).map(|p| p.len()));
    Ok(())
}
