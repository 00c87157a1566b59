//! Randomized suites shared by the property tests and the acceptance run.
//! Each takes a case count and reports the first counterexample as a string.

use std::sync::{Arc, OnceLock};

use arrlab::arrangement::{transform, weak_combinatorics, Arrangement, WeakCombinatorics};
use arrlab::exactnum::{rational, ExactMatrix, FieldElement, QuadField};
use arrlab::matroid::{matroid_from_arrangement, weak_combinatorics_of_matroid, Matroid3};
use arrlab::realization::{builtin_family, instantiate, sample_component};
use arrlab::syzygy::{ar_dimension_jacobian, resolution, JacobianData, ResolutionSummary};
use arrlab::Error;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use super::{load, matrix, naive_rank, near_pencil5, q, triangle};

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn fields() -> Vec<Arc<QuadField>> {
    vec![
        QuadField::rationals(),
        QuadField::gaussian(),
        QuadField::golden(),
        QuadField::sqrt(2).unwrap(),
        QuadField::sqrt(-3).unwrap(),
    ]
}

fn element(k: &Arc<QuadField>, (an, ad, bn, bd): (i64, i64, i64, i64)) -> FieldElement {
    let b = if k.is_rational() { rational(0, 1) } else { rational(bn, bd) };
    FieldElement::new(k, rational(an, ad), b).unwrap()
}

fn parts() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-30i64..=30, 1i64..=9, -30i64..=30, 1i64..=9)
}

pub fn field_axioms(cases: u32) -> Result<(), String> {
    run(cases, (0usize..5, parts(), parts(), parts()), |(fi, x, y, z)| {
        let k = &fields()[fi];
        let (x, y, z) = (element(k, x), element(k, y), element(k, z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&(&x - &y) + &y) == x);
        if x.is_zero() {
            prop_assert_eq!(FieldElement::one(k).checked_div(&x), Err(Error::DivisionByZero));
        } else {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        Ok(())
    })
}

pub fn rank_nullity(cases: u32) -> Result<(), String> {
    let rows = proptest::collection::vec(proptest::collection::vec(-4i64..=4, 6), 0..7);
    run(cases, (rows, 1usize..=6), |(rows, cols)| {
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|r| r[..cols].to_vec()).collect();
        let k = QuadField::rationals();
        let entries = rows.iter().map(|r| r.iter().map(|&x| q(&k, x)).collect()).collect();
        let m = ExactMatrix::from_rows(&k, cols, entries).unwrap();
        let rank = naive_rank(&rows);
        prop_assert_eq!(m.rank(), rank);
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.len(), cols - rank);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        Ok(())
    })
}

/// Hilbert consistency of the computed resolution in every scanned degree and
/// the numerator identities `P(1) = P'(1) = 0`, `P''(1)/2 = tau`.
pub fn resolution_identities(a: &Arrangement, w: &WeakCombinatorics) -> Result<ResolutionSummary, String> {
    let s = resolution(a, None).map_err(|e| format!("{}: {e}", a.label()))?.summary;
    let tau = w.tjurina() as i64;
    if s.numerator_identities() != (0, 0, tau) || s.tjurina as i64 != tau {
        return Err(format!("{}: numerator {:?}, tau {tau}", a.label(), s.numerator_identities()));
    }
    for (r, &dim) in s.ar_dims.iter().enumerate() {
        let dim_s = |k: i64| if k < 0 { 0 } else { (k + 1) * (k + 2) / 2 };
        let r = r as i64;
        let claimed: i64 = s.exponents.iter().map(|&e| dim_s(r - e as i64)).sum::<i64>()
            - s.relation_degrees.iter().map(|e| dim_s(r - e.ar as i64)).sum::<i64>();
        if claimed != dim as i64 {
            return Err(format!("{}: degree {r} has dim {dim}, resolution predicts {claimed}", a.label()));
        }
    }
    if s.mdr != s.exponents[0] {
        return Err(format!("{}: mdr {} vs exponents {:?}", a.label(), s.mdr, s.exponents));
    }
    Ok(s)
}

/// Pair count, matroid round trip, Euler and the resolution identities on
/// random rational arrangements of 4 to 7 lines, with the low degrees of the
/// factored model checked against the plain Jacobian kernel.
pub fn random_arrangements(cases: u32) -> Result<(), String> {
    let raw = proptest::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), 4..8);
    run(cases, raw, |raw| {
        let k = QuadField::rationals();
        let coeffs = raw.iter().map(|&(a, b, c)| [q(&k, a), q(&k, b), q(&k, c)]).collect();
        let Ok(a) = Arrangement::new(&k, "random", coeffs) else { return Ok(()) };
        prop_assume!(!a.is_pencil());
        let w = weak_combinatorics(&a);
        prop_assert!(w.is_consistent());
        let m = matroid_from_arrangement(&a).unwrap();
        prop_assert_eq!(weak_combinatorics_of_matroid(&m).unwrap(), w.clone());
        let j = JacobianData::of_arrangement(&a);
        prop_assert!(j.euler_holds());
        let s = resolution_identities(&a, &w).map_err(TestCaseError::fail)?;
        for r in 0..=s.cap.min(4) {
            prop_assert_eq!(ar_dimension_jacobian(&j, r), s.ar_dims[r as usize]);
        }
        Ok(())
    })
}

struct Baseline {
    a: Arrangement,
    w: WeakCombinatorics,
    m: Matroid3,
    exponents: Vec<u32>,
}

fn baselines() -> &'static [Baseline] {
    static B: OnceLock<Vec<Baseline>> = OnceLock::new();
    B.get_or_init(|| {
        [triangle(), near_pencil5(), load("qa")]
            .into_iter()
            .map(|a| {
                let w = weak_combinatorics(&a);
                let m = matroid_from_arrangement(&a).unwrap();
                let exponents = resolution(&a, None).unwrap().summary.exponents;
                Baseline { a, w, m, exponents }
            })
            .collect()
    })
}

#[derive(Clone, Debug)]
enum Action {
    Pgl(Vec<(i64, i64)>),
    Reorder(Vec<usize>),
    Scale(usize, (i64, i64)),
}

fn action() -> impl Strategy<Value = Action> {
    prop_oneof![
        proptest::collection::vec((-3i64..=3, -1i64..=1), 9).prop_map(Action::Pgl),
        Just((0..13).collect::<Vec<usize>>()).prop_shuffle().prop_map(Action::Reorder),
        (0usize..13, (-5i64..=5, -2i64..=2)).prop_map(|(i, s)| Action::Scale(i, s)),
    ]
}

/// W, matroid, mdr and exponents are unchanged by a projective transformation,
/// a reordering of the lines (matroid relabeled accordingly) and rescaling one
/// line's equation, on the triangle, the near pencil of five lines and Q_A.
pub fn invariance(cases: u32) -> Result<(), String> {
    run(cases, (0usize..3, action()), |(which, act)| {
        let b = &baselines()[which];
        let k = b.a.field().clone();
        let (image, relabel) = match act {
            Action::Pgl(entries) => {
                let g = matrix(&k, &entries);
                prop_assume!(!g.determinant().is_zero());
                (transform(&b.a, &g).unwrap(), None)
            }
            Action::Reorder(p) => {
                let p: Vec<usize> = p.into_iter().filter(|&i| i < b.a.len()).collect();
                (b.a.permuted(&p), Some(p))
            }
            Action::Scale(i, s) => {
                let i = i % b.a.len();
                let c = element(&k, (s.0, 1, s.1, 1));
                prop_assume!(!c.is_zero());
                let coeffs =
                    b.a.lines()
                        .iter()
                        .enumerate()
                        .map(|(j, l)| {
                            let v = l.coeffs();
                            if j == i {
                                [&v[0] * &c, &v[1] * &c, &v[2] * &c]
                            } else {
                                v.clone()
                            }
                        })
                        .collect();
                (Arrangement::new(&k, b.a.label(), coeffs).unwrap(), None)
            }
        };
        prop_assert_eq!(weak_combinatorics(&image), b.w.clone());
        let m = matroid_from_arrangement(&image).unwrap();
        match relabel {
            // new element k is old element p[k]
            Some(p) => {
                let mut inv = vec![0; p.len()];
                for (new, &old) in p.iter().enumerate() {
                    inv[old] = new;
                }
                prop_assert_eq!(&b.m.relabeled(&inv), &m);
            }
            None => prop_assert_eq!(&m, &b.m),
        }
        if image != b.a {
            let s = resolution(&image, None).unwrap().summary;
            prop_assert_eq!(&s.exponents, &b.exponents);
            prop_assert_eq!(s.mdr, b.exponents[0]);
        }
        Ok(())
    })
}

/// Every bundled arrangement plus one point of each realization family.
pub fn all_fixtures() -> Vec<Arrangement> {
    let mut out: Vec<Arrangement> = ["triangle", "qa", "qb", "qb_plus", "l1", "l2"].into_iter().map(load).collect();
    for (name, comp) in [("zacharias", "generic"), ("c2", "points"), ("m1", "C1"), ("m2", "hyperbola")] {
        let f = builtin_family(name).unwrap();
        let p = sample_component(&f, comp, 1, 1).unwrap().remove(0);
        out.push(instantiate(&f, &p).unwrap());
    }
    out
}

pub fn fixture_identities() -> Result<(), String> {
    for a in all_fixtures() {
        let w = weak_combinatorics(&a);
        if !w.is_consistent() {
            return Err(format!("{}: pair count fails for {w}", a.label()));
        }
        if !JacobianData::of_arrangement(&a).euler_holds() {
            return Err(format!("{}: Euler identity fails", a.label()));
        }
        resolution_identities(&a, &w)?;
    }
    Ok(())
}
