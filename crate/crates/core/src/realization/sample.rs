use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expr::ParamExpr;
use super::family::{classify_point, instantiate, verify_realizes, ParameterPoint, RealizationFamily};
use crate::error::{Error, Result};
use crate::exactnum::{rational, FieldElement};

/// Candidate draws per requested point before giving up.
const ATTEMPTS_PER_POINT: usize = 2000;

/// Small random rational: numerator in `[-20, 20]`, denominator in `[1, 10]`.
fn small_rational(rng: &mut ChaCha8Rng, f: &RealizationFamily) -> FieldElement {
    let n = rng.gen_range(-20..=20);
    let d = rng.gen_range(1..=10);
    FieldElement::from_rational(&f.base_field, rational(n, d))
}

fn constant(f: &RealizationFamily, src: &str) -> FieldElement {
    ParamExpr::parse_constant(src, &f.base_field).expect("well-formed constant")
}

type Draw = Box<dyn Fn(&mut ChaCha8Rng) -> Option<Vec<FieldElement>>>;

enum Strategy {
    /// Fresh candidate from the random stream; `None` when the draw is unusable.
    Random(Draw),
    /// A finite list of points.
    Finite(Vec<Vec<FieldElement>>),
}

fn strategy(f: &RealizationFamily, component: &str) -> Result<Strategy> {
    let unknown = || Error::Unknown { kind: "component", name: format!("{}/{component}", f.name) };
    let k = f.base_field.clone();
    let fam = f.clone();
    let one = FieldElement::one(&k);
    let s = match (f.name.as_str(), component) {
        ("zacharias", "generic") => Strategy::Random(Box::new(move |rng| Some(vec![small_rational(rng, &fam)]))),
        ("c2", "points") => Strategy::Finite(vec![vec![constant(f, "1+a/2")], vec![constant(f, "1-a/2")]]),
        ("m1", "C2") => Strategy::Random(Box::new(move |rng| {
            let (x, z) = (small_rational(rng, &fam), small_rational(rng, &fam));
            Some(vec![x.clone(), &x - &z, z])
        })),
        ("m1", "C1") => Strategy::Random(Box::new(move |rng| {
            // the conic solved for y: y (x - 1) = -x z + x + z^2 - 1
            let (x, z) = (small_rational(rng, &fam), small_rational(rng, &fam));
            let den = &x - &one;
            if den.is_zero() {
                return None;
            }
            let num = &(&(&(&z * &z) - &(&x * &z)) + &x) - &one;
            Some(vec![x, num.checked_div(&den).ok()?, z])
        })),
        ("m1", "singular") => Strategy::Random(Box::new(move |rng| {
            // y = x - z turns the conic into (x-1)^2 = z^2 - z, parametrized through
            // (x, z) = (1, 0) by slope t: z = 1/(1 - t^2), x = 1 + t z
            let t = small_rational(rng, &fam);
            let den = &one - &(&t * &t);
            if den.is_zero() {
                return None;
            }
            let z = one.checked_div(&den).ok()?;
            let x = &one + &(&t * &z);
            Some(vec![x.clone(), &x - &z, z])
        })),
        ("m2", "hyperbola") => Strategy::Random(Box::new(move |rng| {
            let x = small_rational(rng, &fam);
            let den = &one - &x;
            if den.is_zero() {
                return None;
            }
            Some(vec![x.clone(), (&x + &one).checked_div(&den).ok()?])
        })),
        ("m2", "root_plus" | "root_minus") => {
            let x = constant(f, if component == "root_plus" { "(1+a)/2" } else { "(1-a)/2" });
            Strategy::Random(Box::new(move |rng| Some(vec![x.clone(), small_rational(rng, &fam)])))
        }
        ("m2", "singular") => Strategy::Finite(vec![
            vec![constant(f, "(1+a)/2"), constant(f, "a")],
            vec![constant(f, "(1-a)/2"), constant(f, "-a")],
        ]),
        _ => return Err(unknown()),
    };
    if component != "singular" && f.component(component).is_none() {
        return Err(unknown());
    }
    Ok(s)
}

/// Whether `p` is a valid point of the requested component: it instantiates to
/// an arrangement realizing the target matroid and lies on exactly that
/// component (or on several, for `singular`).
fn accept(f: &RealizationFamily, component: &str, p: &ParameterPoint) -> bool {
    let Ok(a) = instantiate(f, p) else { return false };
    if !verify_realizes(&a, &f.target_matroid).unwrap_or(false) {
        return false;
    }
    let Ok(class) = classify_point(f, p) else { return false };
    match component {
        "singular" => class.is_singular(),
        c if f.components.len() <= 1 => class.components.iter().any(|x| x == c),
        c => class.components == [c.to_string()],
    }
}

/// `count` exact points on `component`, deterministic in `seed`.
///
/// Components that are finite sets (`c2/points`, `m2/singular`) yield at most
/// their number of points.
pub fn sample_component(
    f: &RealizationFamily,
    component: &str,
    count: usize,
    seed: u64,
) -> Result<Vec<ParameterPoint>> {
    let mut out = Vec::with_capacity(count);
    match strategy(f, component)? {
        Strategy::Finite(points) => {
            for v in points {
                let p = f.point_from_values(v);
                if out.len() < count && accept(f, component, &p) {
                    out.push(p);
                }
            }
        }
        Strategy::Random(draw) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut attempts = 0;
            while out.len() < count {
                attempts += 1;
                if attempts > ATTEMPTS_PER_POINT * count.max(1) {
                    break;
                }
                let Some(v) = draw(&mut rng) else { continue };
                let p = f.point_from_values(v);
                if !out.contains(&p) && accept(f, component, &p) {
                    out.push(p);
                }
            }
        }
    }
    if out.is_empty() && count > 0 {
        return Err(Error::ComponentEmptyOverBaseField(component.to_string()));
    }
    Ok(out)
}
