use std::fmt::Write as _;

use serde::Serialize;

use super::report::{analyze, AnalysisReport, AnalyzeOptions};
use super::SCHEMA;
use crate::arrangement::Arrangement;
use crate::error::Result;
use crate::matroid::{matroid_from_arrangement, matroids_isomorphic};
use crate::syzygy::Classification;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Side {
    pub label: String,
    pub weak_combinatorics: String,
    pub classification: Classification,
    pub mdr: u32,
    pub exponents: Vec<u32>,
    pub resolution: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub same_weak_combinatorics: bool,
    pub isomorphic_matroids: bool,
    pub same_mdr: bool,
    pub same_resolution_shape: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    /// Same weak combinatorics, different mdr.
    pub weak_ziegler_pair: bool,
    /// Isomorphic matroids, different mdr.
    pub ziegler_pair: bool,
    /// Isomorphic matroids, different Milnor resolutions.
    pub strong_ziegler_pair: bool,
    /// Same weak combinatorics, exactly one of the two free.
    pub ntc_witness: bool,
}

impl Flags {
    pub fn verdicts(&self, free_a: bool, free_b: bool) -> Verdicts {
        Verdicts {
            weak_ziegler_pair: self.same_weak_combinatorics && !self.same_mdr,
            ziegler_pair: self.isomorphic_matroids && !self.same_mdr,
            strong_ziegler_pair: self.isomorphic_matroids && !self.same_resolution_shape,
            ntc_witness: self.same_weak_combinatorics && (free_a != free_b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub schema: u32,
    pub a: Side,
    pub b: Side,
    pub flags: Flags,
    pub verdicts: Verdicts,
}

fn side(r: &AnalysisReport) -> Side {
    let z = r.syzygy.as_ref().expect("compare runs the syzygy pipeline");
    Side {
        label: r.label.clone(),
        weak_combinatorics: r.weak_combinatorics.display.clone(),
        classification: z.classification,
        mdr: z.mdr,
        exponents: z.exponents.clone(),
        resolution: z.resolution.clone(),
    }
}

/// Compares two arrangements on every notion of "same lattice, different algebra".
pub fn compare(a: &Arrangement, b: &Arrangement, opts: &AnalyzeOptions) -> Result<PairVerdict> {
    let opts = AnalyzeOptions { skip_syzygy: false, timing: false, ..opts.clone() };
    let (ra, rb) = rayon::join(|| analyze(a, &opts), || analyze(b, &opts));
    let (ra, rb) = (ra?, rb?);
    let (ma, mb) = (matroid_from_arrangement(a)?, matroid_from_arrangement(b)?);
    let (sa, sb) = (side(&ra), side(&rb));
    let flags = Flags {
        same_weak_combinatorics: ra.weak_combinatorics == rb.weak_combinatorics,
        isomorphic_matroids: matroids_isomorphic(&ma, &mb).is_some(),
        same_mdr: sa.mdr == sb.mdr,
        same_resolution_shape: sa.resolution == sb.resolution,
    };
    let verdicts = flags.verdicts(sa.classification == Classification::Free, sb.classification == Classification::Free);
    Ok(PairVerdict { schema: SCHEMA, a: sa, b: sb, flags, verdicts })
}

impl PairVerdict {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (tag, x) in [("A", &self.a), ("B", &self.b)] {
            let _ = writeln!(
                s,
                "{tag}: {}  W {}  {}  mdr {}  exponents {:?}",
                x.label, x.weak_combinatorics, x.classification, x.mdr, x.exponents
            );
            let _ = writeln!(s, "   {}", x.resolution);
        }
        let f = &self.flags;
        let v = &self.verdicts;
        let _ = writeln!(
            s,
            "same W {}  isomorphic {}  same mdr {}  same resolution {}",
            f.same_weak_combinatorics, f.isomorphic_matroids, f.same_mdr, f.same_resolution_shape
        );
        let _ = writeln!(s, "weak Ziegler pair    {}", v.weak_ziegler_pair);
        let _ = writeln!(s, "Ziegler pair         {}", v.ziegler_pair);
        let _ = writeln!(s, "strong Ziegler pair  {}", v.strong_ziegler_pair);
        let _ = writeln!(s, "NTC witness          {}", v.ntc_witness);
        s
    }
}
