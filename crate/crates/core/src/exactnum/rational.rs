use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always gcd-reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::MalformedInput(format!("not a rational: `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Canonical `"p/q"` form (the denominator is always printed).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn is_square(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

pub fn is_rational_square(q: &Rational) -> bool {
    !q.is_negative() && is_square(q.numer()) && is_square(q.denom())
}
