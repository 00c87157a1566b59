use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use super::SCHEMA;
use crate::arrangement::{weak_combinatorics, Arrangement, WeakCombinatorics};
use crate::error::Result;
use crate::matroid::{
    characteristic_polynomial, divisionally_free_rank3, matroid_from_arrangement, nonfree_by_multiplicity,
    MultiplicityVerdict,
};
use crate::syzygy::{resolution, Classification, RelationDegree, ResolutionSummary};

/// Knobs shared by `analyze`, `compare` and batch mode.
#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Overrides the syzygy degree cap.
    pub max_degree: Option<u32>,
    /// Combinatorics only.
    pub skip_syzygy: bool,
    /// Adds wall-clock time to the report (breaks byte-stability).
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakCombinatoricsReport {
    pub display: String,
    pub d: usize,
    /// `t[0] = t_2`, ...
    pub t: Vec<u64>,
}

impl From<&WeakCombinatorics> for WeakCombinatoricsReport {
    fn from(w: &WeakCombinatorics) -> Self {
        WeakCombinatoricsReport { display: w.to_string(), d: w.d, t: w.t.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPolyReport {
    pub chi: [i64; 4],
    pub chi0: [i64; 3],
    pub chi0_roots: Option<[i64; 2]>,
    pub chi0_factored: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterReport {
    /// `NonFree` or `Inconclusive`.
    pub multiplicity_lemma: String,
    /// The offending multiplicity for `NonFree`.
    pub multiplicity: Option<usize>,
    pub divisionally_free: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shifts {
    pub jacobian: Vec<u32>,
    pub syzygies: Vec<u32>,
    pub relations: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyReport {
    pub mdr: u32,
    pub m: usize,
    pub exponents: Vec<u32>,
    pub relation_degrees: Vec<RelationDegree>,
    pub classification: Classification,
    pub resolution: String,
    pub shifts: Shifts,
    pub tjurina: u64,
    /// `(P(1), P'(1), P''(1)/2)` of the resolution numerator.
    pub numerator: [i64; 3],
    /// For free arrangements: whether `chi_0 = (t - d_1)(t - d_2)`.
    pub terao_factorization: Option<bool>,
    pub cap: u32,
    pub ar_dims: Vec<usize>,
}

/// Everything `arrlab analyze` reports about one arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub label: String,
    pub field: String,
    pub d: usize,
    pub weak_combinatorics: WeakCombinatoricsReport,
    pub intersection_points: u64,
    pub nonbases: usize,
    pub characteristic_polynomial: CharPolyReport,
    pub filters: FilterReport,
    pub syzygy: Option<SyzygyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub(crate) fn filters(w: &WeakCombinatorics, divisionally_free: Option<bool>) -> FilterReport {
    let (verdict, m) = match nonfree_by_multiplicity(w) {
        MultiplicityVerdict::NonFree { m } => ("NonFree", Some(m)),
        MultiplicityVerdict::Inconclusive => ("Inconclusive", None),
    };
    FilterReport { multiplicity_lemma: verdict.into(), multiplicity: m, divisionally_free }
}

pub(crate) fn charpoly_report(w: &WeakCombinatorics) -> CharPolyReport {
    let c = characteristic_polynomial(w);
    CharPolyReport { chi: c.chi, chi0: c.chi0, chi0_roots: c.roots, chi0_factored: c.reduced_string() }
}

fn syzygy_report(s: &ResolutionSummary, w: &WeakCombinatorics) -> SyzygyReport {
    let shape = s.shape();
    let (p0, p1, p2) = s.numerator_identities();
    let terao = (s.classification == Classification::Free)
        .then(|| characteristic_polynomial(w).factors_as(s.exponents[0] as i64, s.exponents[1] as i64));
    SyzygyReport {
        mdr: s.mdr,
        m: s.m,
        exponents: s.exponents.clone(),
        relation_degrees: s.relation_degrees.clone(),
        classification: s.classification,
        resolution: shape.to_string(),
        shifts: Shifts { jacobian: shape.jacobian, syzygies: shape.syzygies, relations: shape.relations },
        tjurina: s.tjurina,
        numerator: [p0, p1, p2],
        terao_factorization: terao,
        cap: s.cap,
        ar_dims: s.ar_dims.clone(),
    }
}

/// Runs the combinatorial screens and, unless skipped, the syzygy pipeline.
pub fn analyze(a: &Arrangement, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let start = Instant::now();
    let w = weak_combinatorics(a);
    let m = matroid_from_arrangement(a)?;
    let syzygy =
        if opts.skip_syzygy { None } else { Some(syzygy_report(&resolution(a, opts.max_degree)?.summary, &w)) };
    Ok(AnalysisReport {
        schema: SCHEMA,
        label: a.label().to_string(),
        field: a.field().describe(),
        d: a.len(),
        intersection_points: w.t.iter().sum(),
        nonbases: m.nonbases().len(),
        characteristic_polynomial: charpoly_report(&w),
        filters: filters(&w, Some(divisionally_free_rank3(&m)?)),
        weak_combinatorics: (&w).into(),
        syzygy,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}  ({} lines over {})", self.label, self.d, self.field);
        let _ = writeln!(s, "  W            {}", self.weak_combinatorics.display);
        let _ = writeln!(s, "  points       {}, non-bases {}", self.intersection_points, self.nonbases);
        let _ = writeln!(s, "  chi_0        {}", self.characteristic_polynomial.chi0_factored);
        let f = &self.filters;
        let lemma = match f.multiplicity {
            Some(m) => format!("{} (m = {m})", f.multiplicity_lemma),
            None => f.multiplicity_lemma.clone(),
        };
        let _ = writeln!(s, "  mult. lemma  {lemma}");
        if let Some(df) = f.divisionally_free {
            let _ = writeln!(s, "  div. free    {df}");
        }
        if let Some(z) = &self.syzygy {
            let _ = writeln!(s, "  class        {}", z.classification);
            let _ = writeln!(s, "  mdr          {}", z.mdr);
            let _ = writeln!(s, "  exponents    {:?}", z.exponents);
            let ar: Vec<u32> = z.relation_degrees.iter().map(|r| r.ar).collect();
            let e: Vec<u32> = z.relation_degrees.iter().map(|r| r.milnor).collect();
            let _ = writeln!(s, "  relations    AR {ar:?}, Milnor {e:?}");
            let _ = writeln!(s, "  resolution   {}", z.resolution);
            let _ = writeln!(s, "  tjurina      {}", z.tjurina);
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(s, "  time         {t} ms");
        }
        s
    }
}
