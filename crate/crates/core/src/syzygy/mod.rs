//! Jacobian syzygies `AR(f)`, their minimal generators and relations, and the
//! resulting resolution shape of the Milnor algebra.

pub mod engine;
mod frame;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arrangement::{defining_polynomial, dim_s, weak_combinatorics, Arrangement, DensePolynomial, Monomial};
use crate::error::{Error, Result};
use crate::exactnum::echelon::{Zq, ZqRing};
use crate::exactnum::{FieldElement, QuadField};
use crate::matroid::characteristic_polynomial;
use engine::{GradedScan, Model};
use frame::Frame;

/// `f` with its three partial derivatives. When built from an arrangement the
/// line factors are kept, which enables the much sparser derivation model for
/// every graded computation.
#[derive(Clone, Debug)]
pub struct JacobianData {
    pub f: DensePolynomial,
    pub fx: DensePolynomial,
    pub fy: DensePolynomial,
    pub fz: DensePolynomial,
    lines: Option<Vec<[FieldElement; 3]>>,
    frame: Option<Frame>,
}

/// `a f_x + b f_y + c f_z = 0` with `a, b, c` of common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyVector {
    pub a: DensePolynomial,
    pub b: DensePolynomial,
    pub c: DensePolynomial,
}

impl SyzygyVector {
    pub fn degree(&self) -> u32 {
        self.a.degree()
    }

    /// `a f_x + b f_y + c f_z`.
    pub fn evaluate(&self, j: &JacobianData) -> DensePolynomial {
        self.a.mul(&j.fx).add(&self.b.mul(&j.fy)).add(&self.c.mul(&j.fz))
    }
}

/// Exact partials of a homogeneous `f` of degree at least 1.
pub fn jacobian(f: &DensePolynomial) -> JacobianData {
    JacobianData { f: f.clone(), fx: f.partial(0), fy: f.partial(1), fz: f.partial(2), lines: None, frame: None }
}

impl JacobianData {
    pub fn of_arrangement(a: &Arrangement) -> Self {
        let mut j = jacobian(&defining_polynomial(a));
        let lines: Vec<[FieldElement; 3]> = a.lines().iter().map(|l| l.coeffs().clone()).collect();
        j.frame = Frame::choose(&lines);
        j.lines = Some(lines);
        j
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    pub fn field(&self) -> &Arc<QuadField> {
        self.f.field()
    }

    pub fn has_line_factors(&self) -> bool {
        self.lines.is_some()
    }

    /// `x f_x + y f_y + z f_z = d f`.
    pub fn euler_holds(&self) -> bool {
        let k = self.field();
        let one = FieldElement::one(k);
        let x = DensePolynomial::monomial(k, Monomial(1, 0, 0), one.clone());
        let y = DensePolynomial::monomial(k, Monomial(0, 1, 0), one.clone());
        let z = DensePolynomial::monomial(k, Monomial(0, 0, 1), one);
        let lhs = x.mul(&self.fx).add(&y.mul(&self.fy)).add(&z.mul(&self.fz));
        lhs == self.f.scale(&FieldElement::from_int(k, self.degree() as i64))
    }

    fn ring(&self) -> ZqRing {
        ZqRing::new(self.field())
    }

    /// The derivation model when line factors are known.
    fn model(&self) -> Model {
        match &self.lines {
            Some(_) => self.derivation_model().unwrap(),
            None => self.jacobian_model(),
        }
    }

    fn derivation_model(&self) -> Option<Model> {
        let ring = self.ring();
        let normals = self
            .frame_lines()?
            .iter()
            .map(|n| {
                let mut v = [Zq::default(), Zq::default(), Zq::default()];
                for (j, z) in ring.integral_row(n) {
                    v[j as usize] = z;
                }
                v
            })
            .collect();
        Some(Model::Derivation { normals })
    }

    /// Whether `v` is a syzygy. With line factors this is checked line by line:
    /// `theta(f) = f * sum theta(alpha_H) / alpha_H`, so every quotient must be
    /// exact and the quotients must cancel.
    pub fn annihilates(&self, v: &SyzygyVector) -> bool {
        let Some(lines) = &self.lines else { return v.evaluate(self).is_zero() };
        let mut sum = DensePolynomial::zero(self.field(), v.degree().saturating_sub(1));
        for n in lines {
            let g = v.a.scale(&n[0]).add(&v.b.scale(&n[1])).add(&v.c.scale(&n[2]));
            match g.div_linear(n) {
                Some(q) => sum = sum.add(&q),
                None => return false,
            }
        }
        sum.is_zero()
    }

    /// Line normals in the coordinates the derivation model works in.
    fn frame_lines(&self) -> Option<&[[FieldElement; 3]]> {
        match &self.frame {
            Some(fr) => Some(&fr.normals),
            None => self.lines.as_deref(),
        }
    }

    fn jacobian_model(&self) -> Model {
        let ring = self.ring();
        // one common scale for all three partials keeps the kernel unchanged
        let mut keys = Vec::new();
        let mut values = Vec::new();
        for (c, p) in [&self.fx, &self.fy, &self.fz].into_iter().enumerate() {
            for (m, v) in p.terms() {
                keys.push((c, *m));
                values.push(v.clone());
            }
        }
        let mut partials: [Vec<(Monomial, Zq)>; 3] = Default::default();
        for (j, z) in ring.integral_row(&values) {
            let (c, m) = keys[j as usize];
            partials[c].push((m, z));
        }
        Model::Jacobian { d: self.degree(), partials }
    }

    /// Turns integral terms of the model into a syzygy of `f`.
    fn to_syzygy(&self, degree: u32, terms: &[engine::Term]) -> SyzygyVector {
        let k = self.field();
        let ring = self.ring();
        let one = num_bigint::BigInt::from(1);
        let mut comps =
            [DensePolynomial::zero(k, degree), DensePolynomial::zero(k, degree), DensePolynomial::zero(k, degree)];
        for (c, m, z) in terms {
            comps[*c].add_term(*m, ring.to_field(z, &one));
        }
        let [a, b, c] = comps;
        match self.frame_lines() {
            None => SyzygyVector { a, b, c },
            Some(lines) => {
                // theta(f) = lambda f with lambda = sum_H theta(alpha_H) / alpha_H;
                // theta - (lambda/d) E annihilates f
                let mut lambda = DensePolynomial::zero(k, degree.saturating_sub(1));
                for n in lines {
                    let g = a.scale(&n[0]).add(&b.scale(&n[1])).add(&c.scale(&n[2]));
                    let q = g.div_linear(n).expect("derivation is logarithmic along every line");
                    lambda = lambda.add(&q);
                }
                let inv_d = FieldElement::from_int(k, self.degree() as i64).inv().unwrap();
                let l = lambda.scale(&inv_d);
                let var = |m| DensePolynomial::monomial(k, m, FieldElement::one(k));
                let comps = [
                    a.sub(&l.mul(&var(Monomial(1, 0, 0)))),
                    b.sub(&l.mul(&var(Monomial(0, 1, 0)))),
                    c.sub(&l.mul(&var(Monomial(0, 0, 1)))),
                ];
                let [a, b, c] = match &self.frame {
                    Some(fr) => fr.pull_back([&comps[0], &comps[1], &comps[2]]),
                    None => comps,
                };
                SyzygyVector { a, b, c }
            }
        }
    }
}

/// `dim AR(f)_r`.
///
/// With known line factors this is `dim D(A)_r - dim S_{r-1}`, computed from the
/// logarithmic-derivation conditions; otherwise it is the kernel dimension of
/// the Jacobian map `S_r^3 -> S_{r+d-1}` (see [`ar_dimension_jacobian`]).
pub fn ar_dimension(j: &JacobianData, r: u32) -> usize {
    j.model().conditions(&j.ring(), r).nullity()
}

/// `dim AR(f)_r` straight from the Jacobian matrix, ignoring line factors.
pub fn ar_dimension_jacobian(j: &JacobianData, r: u32) -> usize {
    j.jacobian_model().conditions(&j.ring(), r).nullity()
}

/// `dim M(f)_k = dim S_k - 3 dim S_{k-d+1} + dim AR(f)_{k-d+1}`.
pub fn milnor_hilbert(j: &JacobianData, k: u32) -> u64 {
    let d = j.degree() as i64;
    let r = k as i64 - d + 1;
    let ar = if r >= 0 { ar_dimension(j, r as u32) as i64 } else { 0 };
    (dim_s(k as i64) - 3 * dim_s(r) + ar) as u64
}

fn milnor_from_dims(d: i64, r: i64, ar: i64) -> i64 {
    dim_s(r + d - 1) - 3 * dim_s(r) + ar
}

/// Least `r <= cap` with `AR(f)_r != 0`.
pub fn mdr(j: &JacobianData, cap: u32) -> Result<u32> {
    let model = j.model();
    let ring = j.ring();
    (0..=cap).find(|&r| model.conditions(&ring, r).nullity() > 0).ok_or(Error::CapExceeded(cap as usize))
}

/// Default degree window `[0, 2d - 4]`.
pub fn default_cap(d: u32) -> u32 {
    (2 * d).saturating_sub(4).max(1)
}

/// Minimal generators of `AR(f)`, sorted by degree, found by scanning degrees
/// `0..=cap`.
pub fn minimal_generators(j: &JacobianData, cap: u32) -> Result<Vec<SyzygyVector>> {
    let s = engine::scan(&j.model(), &j.ring(), cap);
    certify(j, &s, cap)?;
    Ok(s.generators.iter().map(|g| j.to_syzygy(g.degree, &g.terms)).collect())
}

/// Degree of a minimal relation in both gradings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationDegree {
    /// Degree in the grading of `AR(f)`.
    pub ar: u32,
    /// Shift `e = ar + d - 1` in the resolution of the Milnor algebra.
    pub milnor: u32,
}

/// Minimal relation degrees among the generators `gens`.
///
/// The relations are recomputed from a fresh scan; `gens` only fixes the
/// expected generator degrees, and a mismatch is an error.
pub fn relation_degrees(j: &JacobianData, gens: &[SyzygyVector], cap: u32) -> Result<Vec<RelationDegree>> {
    let s = engine::scan(&j.model(), &j.ring(), cap);
    certify(j, &s, cap)?;
    let mut want: Vec<u32> = gens.iter().map(|g| g.degree()).collect();
    want.sort_unstable();
    let got: Vec<u32> = s.generators.iter().map(|g| g.degree).collect();
    if want != got {
        return Err(Error::InconsistentResolution(format!(
            "given generator degrees {want:?} differ from the minimal ones {got:?}"
        )));
    }
    let d = j.degree();
    Ok(s.relations.iter().map(|r| RelationDegree { ar: r.degree, milnor: r.degree + d - 1 }).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Free,
    PlusOneGenerated,
    MSyzygy(usize),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Free => write!(f, "Free"),
            Classification::PlusOneGenerated => write!(f, "PlusOneGenerated"),
            Classification::MSyzygy(m) => write!(f, "{m}-syzygy"),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Shifts of the minimal resolution
/// `0 -> (+) S(-e_j) -> (+) S(-(d-1+d_i)) -> S(-(d-1))^3 -> S` of `M(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ResolutionShape {
    pub jacobian: Vec<u32>,
    pub syzygies: Vec<u32>,
    pub relations: Vec<u32>,
}

fn shift_sum(shifts: &[u32]) -> String {
    let mut parts: Vec<(u32, usize)> = Vec::new();
    for &s in shifts {
        match parts.last_mut() {
            Some((t, n)) if *t == s => *n += 1,
            _ => parts.push((s, 1)),
        }
    }
    parts
        .iter()
        .map(|(s, n)| if *n == 1 { format!("S(-{s})") } else { format!("S(-{s})^{n}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for ResolutionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0 -> ")?;
        if !self.relations.is_empty() {
            write!(f, "{} -> ", shift_sum(&self.relations))?;
        }
        write!(f, "{} -> {} -> S", shift_sum(&self.syzygies), shift_sum(&self.jacobian))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionSummary {
    pub d: u32,
    pub m: usize,
    pub exponents: Vec<u32>,
    pub relation_degrees: Vec<RelationDegree>,
    pub mdr: u32,
    pub classification: Classification,
    pub tjurina: u64,
    /// `ar_dims[r] = dim AR(f)_r` for `r` in `0..=cap`.
    pub ar_dims: Vec<usize>,
    pub cap: u32,
}

impl ResolutionSummary {
    pub fn shape(&self) -> ResolutionShape {
        let d = self.d;
        let mut syzygies: Vec<u32> = self.exponents.iter().map(|e| e + d - 1).collect();
        syzygies.sort_unstable_by(|a, b| b.cmp(a));
        let mut relations: Vec<u32> = self.relation_degrees.iter().map(|r| r.milnor).collect();
        relations.sort_unstable_by(|a, b| b.cmp(a));
        ResolutionShape { jacobian: vec![d - 1; 3], syzygies, relations }
    }

    /// `(P(1), P'(1), P''(1)/2)` for the numerator
    /// `P(T) = 1 - 3T^{d-1} + sum T^{d-1+d_i} - sum T^{e_j}`.
    pub fn numerator_identities(&self) -> (i64, i64, i64) {
        let mut terms: Vec<(i64, i64)> = vec![(1, 0), (-3, self.d as i64 - 1)];
        terms.extend(self.exponents.iter().map(|&e| (1, (self.d + e) as i64 - 1)));
        terms.extend(self.relation_degrees.iter().map(|r| (-1, r.milnor as i64)));
        let p0 = terms.iter().map(|(c, _)| c).sum();
        let p1 = terms.iter().map(|(c, k)| c * k).sum();
        let p2: i64 = terms.iter().map(|(c, k)| c * k * (k - 1)).sum();
        (p0, p1, p2 / 2)
    }
}

/// Minimal generators, relations and every consistency certificate.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub summary: ResolutionSummary,
    pub generators: Vec<SyzygyVector>,
}

fn claimed_dim(gens: &[u32], rels: &[u32], r: u32) -> i64 {
    let r = r as i64;
    gens.iter().map(|&g| dim_s(r - g as i64)).sum::<i64>() - rels.iter().map(|&e| dim_s(r - e as i64)).sum::<i64>()
}

/// Checks the scan against the Hilbert function it claims and against the
/// stabilized Milnor algebra dimension.
fn certify(j: &JacobianData, s: &GradedScan, cap: u32) -> Result<()> {
    let gens: Vec<u32> = s.generators.iter().map(|g| g.degree).collect();
    let rels: Vec<u32> = s.relations.iter().map(|r| r.degree).collect();
    for (r, &dim) in s.dims.iter().enumerate() {
        let claimed = claimed_dim(&gens, &rels, r as u32);
        if claimed != dim as i64 {
            return Err(Error::InconsistentResolution(format!(
                "degree {r}: dim AR = {dim} but the resolution predicts {claimed}"
            )));
        }
    }
    let d = j.degree() as i64;
    // M(f)_k is constant for k >= 3d - 6, i.e. r >= 2d - 5; the last two
    // scanned degrees must lie in that range and agree
    if (cap as i64) < 2 * d - 4 {
        return Err(Error::CapExceeded(cap as usize));
    }
    let last = cap as i64;
    let a = milnor_from_dims(d, last - 1, s.dims[cap as usize - 1] as i64);
    let b = milnor_from_dims(d, last, s.dims[cap as usize] as i64);
    if a != b {
        return Err(Error::CapExceeded(cap as usize));
    }
    Ok(())
}

fn classify(d: u32, exps: &[u32]) -> Classification {
    match exps.len() {
        2 => Classification::Free,
        3 if exps[0] + exps[1] == d => Classification::PlusOneGenerated,
        m => Classification::MSyzygy(m),
    }
}

/// Full pipeline with the default window.
pub fn resolution_summary(a: &Arrangement) -> Result<ResolutionSummary> {
    Ok(resolution(a, None)?.summary)
}

/// Full pipeline; `cap` overrides the default window `[0, 2d-4]`.
pub fn resolution(a: &Arrangement, cap: Option<u32>) -> Result<Resolution> {
    let d = a.len() as u32;
    if d < 3 || a.is_pencil() {
        return Err(Error::Pencil);
    }
    let cap = cap.unwrap_or_else(|| default_cap(d));
    let j = JacobianData::of_arrangement(a);
    let scan = engine::scan(&j.model(), &j.ring(), cap);
    certify(&j, &scan, cap)?;

    let exponents: Vec<u32> = scan.generators.iter().map(|g| g.degree).collect();
    let relation_degrees: Vec<RelationDegree> =
        scan.relations.iter().map(|r| RelationDegree { ar: r.degree, milnor: r.degree + d - 1 }).collect();
    let w = weak_combinatorics(a);
    let tjurina = w.tjurina();
    let summary = ResolutionSummary {
        d,
        m: exponents.len(),
        mdr: *exponents.first().ok_or(Error::CapExceeded(cap as usize))?,
        classification: classify(d, &exponents),
        exponents,
        relation_degrees,
        tjurina,
        ar_dims: scan.dims.clone(),
        cap,
    };

    let stable = milnor_from_dims(d as i64, cap as i64, summary.ar_dims[cap as usize] as i64);
    if stable != tjurina as i64 {
        return Err(Error::InconsistentResolution(format!(
            "Milnor algebra stabilizes at {stable}, combinatorial Tjurina number is {tjurina}"
        )));
    }
    let (p0, p1, p2) = summary.numerator_identities();
    if (p0, p1, p2) != (0, 0, tjurina as i64) {
        return Err(Error::InconsistentResolution(format!(
            "numerator identities give P(1) = {p0}, P'(1) = {p1}, P''(1)/2 = {p2}"
        )));
    }
    match summary.classification {
        Classification::Free => {
            let (e1, e2) = (summary.exponents[0], summary.exponents[1]);
            let chi = characteristic_polynomial(&w);
            if e1 + e2 != d - 1 || !chi.factors_as(e1 as i64, e2 as i64) {
                return Err(Error::InconsistentResolution(format!(
                    "free with exponents ({e1},{e2}) but reduced characteristic polynomial is {}",
                    chi.reduced_string()
                )));
            }
        }
        Classification::PlusOneGenerated | Classification::MSyzygy(_) => {}
    }

    let generators: Vec<SyzygyVector> = scan.generators.iter().map(|g| j.to_syzygy(g.degree, &g.terms)).collect();
    for g in &generators {
        if !j.annihilates(g) {
            return Err(Error::InconsistentResolution(format!("generator of degree {} is not a syzygy", g.degree())));
        }
    }
    Ok(Resolution { summary, generators })
}
