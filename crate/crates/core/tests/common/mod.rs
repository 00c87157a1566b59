#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use arrlab::arrangement::{read_arrangement, Arrangement};
use arrlab::exactnum::{rational, ExactMatrix, FieldElement, QuadField};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load(name: &str) -> Arrangement {
    read_arrangement(data(&format!("{name}.json"))).unwrap()
}

pub fn q(k: &Arc<QuadField>, n: i64) -> FieldElement {
    FieldElement::from_int(k, n)
}

pub fn lines(k: &Arc<QuadField>, label: &str, rows: &[[i64; 3]]) -> Arrangement {
    let coeffs = rows.iter().map(|r| [q(k, r[0]), q(k, r[1]), q(k, r[2])]).collect();
    Arrangement::new(k, label, coeffs).unwrap()
}

pub fn triangle() -> Arrangement {
    lines(&QuadField::rationals(), "triangle", &[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
}

/// Four lines through (0:0:1) and one general line.
pub fn near_pencil5() -> Arrangement {
    lines(&QuadField::rationals(), "near-pencil", &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0], [0, 0, 1]])
}

/// 3x3 matrix over `k` with entries `a + b*alpha` from the given integer pairs.
pub fn matrix(k: &Arc<QuadField>, entries: &[(i64, i64)]) -> ExactMatrix {
    let el = |(a, b): (i64, i64)| {
        let x = q(k, a);
        if b == 0 || k.is_rational() {
            x
        } else {
            &x + &(&q(k, b) * &FieldElement::alpha(k).unwrap())
        }
    };
    let rows = entries.chunks(3).map(|c| c.iter().map(|&e| el(e)).collect()).collect();
    ExactMatrix::from_rows(k, 3, rows).unwrap()
}

pub fn rat(n: i64, d: i64) -> FieldElement {
    FieldElement::from_rational(&QuadField::rationals(), rational(n, d))
}

/// Rank by plain Gaussian elimination over `BigRational`, sharing no code with
/// the library.
pub fn naive_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = BigRational::one() / &m[rank][c];
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..ncols {
                    let t = &f * &m[rank][j];
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}
pub mod suites;
