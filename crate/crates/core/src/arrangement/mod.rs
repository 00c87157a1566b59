//! Line arrangements in the projective plane over `Q` or a quadratic field.

mod io;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use io::{
    arrangement_to_json, element_from_json, element_to_json, field_from_json, field_to_json, parse_arrangement,
    parse_arrangement_str, read_arrangement,
};
pub use poly::{dim_s, monomial_index, monomials, DensePolynomial, Monomial};

use crate::error::{Error, Result};
use crate::exactnum::{same_field, ExactMatrix, FieldElement, QuadField};

/// Divides by the first nonzero coordinate. `None` for the zero vector.
pub fn canonical_projective(v: &[FieldElement; 3]) -> Option<[FieldElement; 3]> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv().ok()?;
    Some([&v[0] * &inv, &v[1] * &inv, &v[2] * &inv])
}

pub fn cross(u: &[FieldElement; 3], v: &[FieldElement; 3]) -> [FieldElement; 3] {
    [&(&u[1] * &v[2]) - &(&u[2] * &v[1]), &(&u[2] * &v[0]) - &(&u[0] * &v[2]), &(&u[0] * &v[1]) - &(&u[1] * &v[0])]
}

pub fn dot(u: &[FieldElement; 3], v: &[FieldElement; 3]) -> FieldElement {
    &(&(&u[0] * &v[0]) + &(&u[1] * &v[1])) + &(&u[2] * &v[2])
}

pub fn det3(u: &[FieldElement; 3], v: &[FieldElement; 3], w: &[FieldElement; 3]) -> FieldElement {
    dot(u, &cross(v, w))
}

/// The line `a x + b y + c z = 0`, stored with its first nonzero coefficient equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    coeffs: [FieldElement; 3],
}

impl Line {
    pub fn new(coeffs: [FieldElement; 3]) -> Option<Line> {
        canonical_projective(&coeffs).map(|coeffs| Line { coeffs })
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    pub fn passes_through(&self, p: &[FieldElement; 3]) -> bool {
        dot(&self.coeffs, p).is_zero()
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, v) in self.coeffs.iter().zip(["x", "y", "z"]) {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(v.to_string());
            } else {
                parts.push(format!("({c}){v}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Ordered list of pairwise distinct lines over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    field: Arc<QuadField>,
    lines: Vec<Line>,
    label: String,
}

impl Arrangement {
    /// Canonicalizes each coefficient triple and rejects zero or repeated lines.
    pub fn new(field: &Arc<QuadField>, label: impl Into<String>, coeffs: Vec<[FieldElement; 3]>) -> Result<Self> {
        let mut lines: Vec<Line> = Vec::with_capacity(coeffs.len());
        for (i, c) in coeffs.into_iter().enumerate() {
            if c.iter().any(|x| !same_field(x.field(), field)) {
                return Err(Error::FieldMismatch);
            }
            let line = Line::new(c).ok_or(Error::ZeroLine(i))?;
            if let Some(j) = lines.iter().position(|l| *l == line) {
                return Err(Error::DuplicateLine(j, i));
            }
            lines.push(line);
        }
        Ok(Arrangement { field: field.clone(), lines, label: label.into() })
    }

    pub fn field(&self) -> &Arc<QuadField> {
        &self.field
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// A copy with one more line appended.
    pub fn with_line(&self, coeffs: [FieldElement; 3]) -> Result<Self> {
        let mut all: Vec<[FieldElement; 3]> = self.lines.iter().map(|l| l.coeffs.clone()).collect();
        all.push(coeffs);
        Arrangement::new(&self.field, self.label.clone(), all)
    }

    /// A copy without line `i`.
    pub fn without_line(&self, i: usize) -> Self {
        let mut lines = self.lines.clone();
        lines.remove(i);
        Arrangement { field: self.field.clone(), lines, label: self.label.clone() }
    }

    /// Lines reordered so that new line `k` is old line `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.len());
        let lines = perm.iter().map(|&i| self.lines[i].clone()).collect();
        Arrangement { field: self.field.clone(), lines, label: self.label.clone() }
    }

    /// Whether all lines pass through one common point.
    pub fn is_pencil(&self) -> bool {
        if self.len() < 3 {
            return true;
        }
        let p = cross(&self.lines[0].coeffs, &self.lines[1].coeffs);
        self.lines.iter().all(|l| l.passes_through(&p))
    }
}

/// A point of the plane lying on at least two lines of the arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub point: [FieldElement; 3],
    /// Sorted 0-based indices of the lines through `point`.
    pub incident: Vec<usize>,
}

impl IntersectionPoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

/// All intersection points, each pair of lines accounted for exactly once,
/// sorted by incident index lists.
pub fn intersection_points(a: &Arrangement) -> Vec<IntersectionPoint> {
    let n = a.len();
    let mut seen = vec![vec![false; n]; n];
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if seen[i][j] {
                continue;
            }
            let p = canonical_projective(&cross(&a.lines[i].coeffs, &a.lines[j].coeffs))
                .expect("distinct lines meet in a point");
            let incident: Vec<usize> = (0..n).filter(|&k| a.lines[k].passes_through(&p)).collect();
            for (x, &u) in incident.iter().enumerate() {
                for &v in &incident[x + 1..] {
                    seen[u][v] = true;
                }
            }
            out.push(IntersectionPoint { point: p, incident });
        }
    }
    out.sort_by(|x, y| x.incident.cmp(&y.incident));
    out
}

/// `(d; t_2, ..., t_m)` where `t_k` counts `k`-fold points and `m` is the
/// largest multiplicity present.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakCombinatorics {
    pub d: usize,
    /// `t[0] = t_2`, `t[1] = t_3`, ...; no trailing zeros.
    pub t: Vec<u64>,
}

impl WeakCombinatorics {
    pub fn new(d: usize, mut t: Vec<u64>) -> Self {
        while t.last() == Some(&0) {
            t.pop();
        }
        WeakCombinatorics { d, t }
    }

    /// Builds from a multiplicity histogram `m -> t_m`.
    pub fn from_counts(d: usize, counts: &BTreeMap<usize, u64>) -> Self {
        let max = counts.keys().copied().max().unwrap_or(1);
        let t = (2..=max).map(|m| counts.get(&m).copied().unwrap_or(0)).collect();
        Self::new(d, t)
    }

    pub fn t_m(&self, m: usize) -> u64 {
        if m < 2 {
            return 0;
        }
        self.t.get(m - 2).copied().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.t.len() + 1
    }

    /// `(m, t_m)` for every multiplicity with `t_m > 0`.
    pub fn multiplicities(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.t.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i + 2, c))
    }

    /// `sum_m C(m,2) t_m`, which must equal `C(d,2)`.
    pub fn pair_count(&self) -> u64 {
        self.multiplicities().map(|(m, c)| (m * (m - 1) / 2) as u64 * c).sum()
    }

    pub fn is_consistent(&self) -> bool {
        self.pair_count() == (self.d * self.d.saturating_sub(1) / 2) as u64
    }

    /// `sum_m (m-1)^2 t_m`, the global Tjurina number of the arrangement.
    pub fn tjurina(&self) -> u64 {
        self.multiplicities().map(|(m, c)| ((m - 1) * (m - 1)) as u64 * c).sum()
    }

    /// Parses `"(d; t2, t3, ...)"` (parentheses and spaces optional).
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::MalformedInput(format!("not a weak combinatorics vector: `{s}`"));
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (d, rest) = inner.split_once(';').ok_or_else(bad)?;
        let d: usize = d.trim().parse().map_err(|_| bad())?;
        let t = rest.split(',').map(|x| x.trim().parse::<u64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(d, t))
    }
}

impl fmt::Display for WeakCombinatorics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.t.iter().map(|x| x.to_string()).collect();
        write!(f, "({}; {})", self.d, t.join(", "))
    }
}

pub fn weak_combinatorics(a: &Arrangement) -> WeakCombinatorics {
    let mut counts = BTreeMap::new();
    for p in intersection_points(a) {
        *counts.entry(p.multiplicity()).or_insert(0u64) += 1;
    }
    WeakCombinatorics::from_counts(a.len(), &counts)
}

/// Product of all line forms, expanded.
pub fn defining_polynomial(a: &Arrangement) -> DensePolynomial {
    let mut f = DensePolynomial::constant(FieldElement::one(&a.field));
    for l in &a.lines {
        f = f.mul(&DensePolynomial::linear(&l.coeffs));
    }
    f
}

/// Image of the arrangement under the point map `p -> g p`; line coefficient
/// vectors transform by the inverse transpose.
pub fn transform(a: &Arrangement, g: &ExactMatrix) -> Result<Arrangement> {
    if g.rows() != 3 || g.cols() != 3 {
        return Err(Error::MalformedInput("transformation must be 3x3".into()));
    }
    if !same_field(g.field(), &a.field) {
        return Err(Error::FieldMismatch);
    }
    let inv_t = g.inverse()?.transpose();
    let coeffs = a
        .lines
        .iter()
        .map(|l| {
            let v = inv_t.mul_vec(&l.coeffs);
            [v[0].clone(), v[1].clone(), v[2].clone()]
        })
        .collect();
    Arrangement::new(&a.field, a.label.clone(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_lines(v: &[[i64; 3]]) -> Arrangement {
        let k = QuadField::rationals();
        let f = |n| FieldElement::from_int(&k, n);
        Arrangement::new(&k, "t", v.iter().map(|r| [f(r[0]), f(r[1]), f(r[2])]).collect()).unwrap()
    }

    #[test]
    fn triangle_points() {
        let a = q_lines(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let pts = intersection_points(&a);
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| p.multiplicity() == 2));
        assert_eq!(weak_combinatorics(&a), WeakCombinatorics::new(3, vec![3]));
    }

    #[test]
    fn pencil_point() {
        let a = q_lines(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        let pts = intersection_points(&a);
        assert_eq!(pts.len(), 1);
        let k = a.field().clone();
        assert_eq!(pts[0].point, [FieldElement::zero(&k), FieldElement::zero(&k), FieldElement::one(&k)]);
        assert_eq!(pts[0].incident, vec![0, 1, 2]);
        assert!(a.is_pencil());
    }

    #[test]
    fn duplicate_and_zero_lines() {
        let k = QuadField::rationals();
        let f = |n| FieldElement::from_int(&k, n);
        let r = Arrangement::new(&k, "d", vec![[f(1), f(0), f(0)], [f(2), f(0), f(0)]]);
        assert_eq!(r, Err(Error::DuplicateLine(0, 1)));
        let r = Arrangement::new(&k, "z", vec![[f(0), f(0), f(0)]]);
        assert_eq!(r, Err(Error::ZeroLine(0)));
    }

    #[test]
    fn polynomial_expansion() {
        let a = q_lines(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let f = defining_polynomial(&a);
        assert_eq!(f.num_terms(), 1);
        assert!(f.coeff(&Monomial(1, 1, 1)).is_one());
        let b = q_lines(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        let g = defining_polynomial(&b);
        assert_eq!(g.num_terms(), 2);
        assert!(g.coeff(&Monomial(2, 1, 0)).is_one());
        assert!(g.coeff(&Monomial(1, 2, 0)).is_one());
    }

    #[test]
    fn swap_transform() {
        let a = q_lines(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let k = a.field().clone();
        let f = |n| FieldElement::from_int(&k, n);
        let g =
            ExactMatrix::from_rows(&k, 3, vec![vec![f(0), f(1), f(0)], vec![f(1), f(0), f(0)], vec![f(0), f(0), f(1)]])
                .unwrap();
        let b = transform(&a, &g).unwrap();
        assert_eq!(b.lines()[0], a.lines()[1]);
        assert_eq!(b.lines()[1], a.lines()[0]);
        assert_eq!(transform(&a, &ExactMatrix::identity(&k, 3)).unwrap(), a);
        let sing = ExactMatrix::zeros(&k, 3, 3);
        assert_eq!(transform(&a, &sing), Err(Error::SingularTransform));
    }

    #[test]
    fn weak_combinatorics_text() {
        let w = WeakCombinatorics::parse("(10;21,1,0,0,0,1)").unwrap();
        assert_eq!(w.d, 10);
        assert_eq!(w.t_m(7), 1);
        assert_eq!(w.max_multiplicity(), 7);
        assert_eq!(w.to_string(), "(10; 21, 1, 0, 0, 0, 1)");
        assert_eq!(WeakCombinatorics::parse("(4; 6, 0)").unwrap().t, vec![6]);
        assert!(WeakCombinatorics::parse("4,6").is_err());
    }
}
