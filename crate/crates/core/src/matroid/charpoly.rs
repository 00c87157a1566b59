use std::fmt;

use num_integer::Roots;
use serde::Serialize;

use crate::arrangement::WeakCombinatorics;

/// `chi(t) = t^3 - d t^2 + S t - (S + 1 - d)` with `S = sum (r-1) t_r`, and the
/// reduced quadratic `chi_0 = chi / (t - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    /// Coefficients of `chi`, leading first.
    pub chi: [i64; 4],
    /// Coefficients of `chi_0`, leading first.
    pub chi0: [i64; 3],
    /// Integer roots of `chi_0` in ascending order (with multiplicity), if both are integers.
    pub roots: Option<[i64; 2]>,
}

pub fn characteristic_polynomial(w: &WeakCombinatorics) -> CharPoly {
    let d = w.d as i64;
    let s: i64 = w.multiplicities().map(|(m, c)| (m as i64 - 1) * c as i64).sum();
    let chi = [1, -d, s, -(s + 1 - d)];
    let chi0 = [1, -(d - 1), s - d + 1];
    CharPoly { chi, chi0, roots: integer_roots(chi0) }
}

fn integer_roots(q: [i64; 3]) -> Option<[i64; 2]> {
    // t^2 + b t + c
    let (b, c) = (q[1], q[2]);
    let disc = b * b - 4 * c;
    if disc < 0 {
        return None;
    }
    let r = disc.sqrt();
    if r * r != disc || (r - b) % 2 != 0 {
        return None;
    }
    Some([(-b - r) / 2, (-b + r) / 2])
}

impl CharPoly {
    pub fn chi0_at(&self, t: i64) -> i64 {
        self.chi0[0] * t * t + self.chi0[1] * t + self.chi0[2]
    }

    pub fn chi_at(&self, t: i64) -> i64 {
        self.chi.iter().fold(0, |acc, c| acc * t + c)
    }

    /// Whether `chi_0 = (t - a)(t - b)`.
    pub fn factors_as(&self, a: i64, b: i64) -> bool {
        self.chi0 == [1, -(a + b), a * b]
    }

    /// `chi` reconstructed as `(t - 1) chi_0`.
    pub fn product_with_t_minus_one(&self) -> [i64; 4] {
        let q = self.chi0;
        [q[0], q[1] - q[0], q[2] - q[1], -q[2]]
    }

    /// `(t-6)^2`, `(t-4)(t-5)`, or the expanded form when the roots are not integral.
    pub fn reduced_string(&self) -> String {
        let lin = |r: i64| match r {
            0 => "t".to_string(),
            r if r > 0 => format!("(t-{r})"),
            r => format!("(t+{})", -r),
        };
        match self.roots {
            Some([a, b]) if a == b => format!("{}^2", lin(a)),
            Some([a, b]) => format!("{}{}", lin(a), lin(b)),
            None => poly_string(&self.chi0),
        }
    }
}

fn poly_string(c: &[i64]) -> String {
    let deg = c.len() - 1;
    let mut s = String::new();
    for (i, &a) in c.iter().enumerate() {
        let e = deg - i;
        if a == 0 {
            continue;
        }
        let sign = if a < 0 { "-" } else { "+" };
        if s.is_empty() {
            if a < 0 {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        let abs = a.abs();
        let var = match e {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{e}"),
        };
        if abs != 1 || e == 0 {
            s.push_str(&abs.to_string());
        }
        s.push_str(&var);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = (t-1)*{}", poly_string(&self.chi), self.reduced_string())
    }
}

/// Outcome of the multiplicity lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MultiplicityVerdict {
    /// Some `m`-fold point with `2m >= d + 1` has `m - 1` not a root of `chi_0`.
    NonFree {
        m: usize,
    },
    Inconclusive,
}

impl fmt::Display for MultiplicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplicityVerdict::NonFree { m } => write!(f, "NonFree (m = {m})"),
            MultiplicityVerdict::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// A free arrangement with an `m`-fold point, `2m >= d + 1`, has `m - 1` among the
/// roots of `chi_0`; failing that, every realization is non-free.
pub fn nonfree_by_multiplicity(w: &WeakCombinatorics) -> MultiplicityVerdict {
    let chi = characteristic_polynomial(w);
    w.multiplicities()
        .filter(|&(m, _)| 2 * m > w.d)
        .find(|&(m, _)| chi.chi0_at(m as i64 - 1) != 0)
        .map_or(MultiplicityVerdict::Inconclusive, |(m, _)| MultiplicityVerdict::NonFree { m })
}
