//! Rank-3 matroids given by their non-bases.

mod charpoly;
mod iso;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde_json::{json, Value};

pub use charpoly::{characteristic_polynomial, nonfree_by_multiplicity, CharPoly, MultiplicityVerdict};
pub use iso::matroids_isomorphic;

use crate::arrangement::{det3, Arrangement, WeakCombinatorics};
use crate::error::{Error, Result};

/// Rank-3 matroid on `{0, .., n-1}`; the non-bases are sorted triples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid3 {
    n: usize,
    nonbases: BTreeSet<[usize; 3]>,
}

fn sorted3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

impl Matroid3 {
    /// Triples are 0-based and may be given in any order.
    pub fn new(n: usize, nonbases: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for t in nonbases {
            let t = sorted3(t);
            if t[2] >= n || t[0] == t[1] || t[1] == t[2] {
                return Err(Error::InvalidMatroid(format!("bad triple {t:?} on {n} elements")));
            }
            set.insert(t);
        }
        Ok(Matroid3 { n, nonbases: set })
    }

    /// The uniform matroid `U(3, n)`.
    pub fn uniform(n: usize) -> Self {
        Matroid3 { n, nonbases: BTreeSet::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nonbases(&self) -> &BTreeSet<[usize; 3]> {
        &self.nonbases
    }

    pub fn is_nonbasis(&self, a: usize, b: usize, c: usize) -> bool {
        self.nonbases.contains(&sorted3([a, b, c]))
    }

    /// Ground set relabeled by `perm`: element `i` becomes `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let nonbases = self.nonbases.iter().map(|t| sorted3(t.map(|i| perm[i]))).collect();
        Matroid3 { n: self.n, nonbases }
    }

    /// Rank-2 flats with at least three elements, each sorted, in sorted order.
    ///
    /// Non-basis triples sharing a pair are merged until nothing changes; every
    /// triple inside a merged flat must itself be a non-basis.
    pub fn flats(&self) -> Result<Vec<Vec<usize>>> {
        let mut flats: Vec<BTreeSet<usize>> = Vec::new();
        for t in &self.nonbases {
            let mut merged: BTreeSet<usize> = t.iter().copied().collect();
            let mut i = 0;
            while i < flats.len() {
                if flats[i].intersection(&merged).count() >= 2 {
                    merged.extend(flats.swap_remove(i));
                    i = 0;
                } else {
                    i += 1;
                }
            }
            flats.push(merged);
        }
        let mut out: Vec<Vec<usize>> = flats.into_iter().map(|f| f.into_iter().collect()).collect();
        for f in &out {
            for (x, &a) in f.iter().enumerate() {
                for (y, &b) in f.iter().enumerate().skip(x + 1) {
                    for &c in &f[y + 1..] {
                        if !self.nonbases.contains(&[a, b, c]) {
                            return Err(Error::InvalidMatroid(format!(
                                "flat {:?} forces {{{}, {}, {}}} to be a non-basis",
                                f.iter().map(|i| i + 1).collect::<Vec<_>>(),
                                a + 1,
                                b + 1,
                                c + 1
                            )));
                        }
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// All rank-2 flats including two-element ones, i.e. the intersection points
    /// of a realization.
    pub fn all_flats(&self) -> Result<Vec<Vec<usize>>> {
        let big = self.flats()?;
        let mut covered = vec![vec![false; self.n]; self.n];
        for f in &big {
            for &a in f {
                for &b in f {
                    covered[a][b] = true;
                }
            }
        }
        let mut out = big;
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !covered[a][b] {
                    out.push(vec![a, b]);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Basis-exchange check over all pairs of bases, after flat consistency.
    pub fn validate(&self) -> bool {
        if self.n < 3 || self.flats().is_err() {
            return false;
        }
        let n = self.n;
        let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        let mut basis = vec![false; n * n * n];
        let mut bases = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if !self.nonbases.contains(&[a, b, c]) {
                        bases.push([a, b, c]);
                        for p in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                            basis[idx(p[0], p[1], p[2])] = true;
                        }
                    }
                }
            }
        }
        if bases.is_empty() {
            return false;
        }
        for b1 in &bases {
            for b2 in &bases {
                for (i, &x) in b1.iter().enumerate() {
                    if b2.contains(&x) {
                        continue;
                    }
                    let rest = [b1[(i + 1) % 3], b1[(i + 2) % 3]];
                    let ok = b2.iter().any(|&y| !b1.contains(&y) && basis[idx(rest[0], rest[1], y)]);
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Number of rank-2 flats through each element.
    pub fn points_per_element(&self) -> Result<Vec<usize>> {
        let mut count = vec![0; self.n];
        for f in self.all_flats()? {
            for e in f {
                count[e] += 1;
            }
        }
        Ok(count)
    }
}

/// Non-bases are the concurrent triples of lines.
pub fn matroid_from_arrangement(a: &Arrangement) -> Result<Matroid3> {
    if a.len() < 3 || a.is_pencil() {
        return Err(Error::Pencil);
    }
    let l = a.lines();
    let mut nb = BTreeSet::new();
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            for k in j + 1..l.len() {
                if det3(l[i].coeffs(), l[j].coeffs(), l[k].coeffs()).is_zero() {
                    nb.insert([i, j, k]);
                }
            }
        }
    }
    Ok(Matroid3 { n: l.len(), nonbases: nb })
}

pub fn validate_matroid(m: &Matroid3) -> bool {
    m.validate()
}

pub fn weak_combinatorics_of_matroid(m: &Matroid3) -> Result<WeakCombinatorics> {
    let mut counts = BTreeMap::new();
    for f in m.all_flats()? {
        *counts.entry(f.len()).or_insert(0u64) += 1;
    }
    Ok(WeakCombinatorics::from_counts(m.n, &counts))
}

/// Rank-3 division test: some element `H` whose number `n_H` of rank-2 flats
/// makes `n_H - 1` a root of `chi_0`.
///
/// Restrictions of rank 3 arrangements to a line are rank 2 and always free, so
/// a single division step decides divisional freeness here.
pub fn divisionally_free_rank3(m: &Matroid3) -> Result<bool> {
    let chi = characteristic_polynomial(&weak_combinatorics_of_matroid(m)?);
    Ok(m.points_per_element()?.iter().any(|&n_h| chi.chi0_at(n_h as i64 - 1) == 0))
}

/// Parses `{"n": 12, "nonbases": [[1,2,3], ...]}` with 1-based triples.
pub fn parse_matroid(v: &Value) -> Result<Matroid3> {
    let bad = |m: &str| Error::MalformedInput(format!("matroid file: {m}"));
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing `n`"))? as usize;
    let list = v.get("nonbases").and_then(Value::as_array).ok_or_else(|| bad("missing `nonbases`"))?;
    let mut triples = Vec::with_capacity(list.len());
    for t in list {
        let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("non-bases are triples"))?;
        let mut out = [0usize; 3];
        for (o, x) in out.iter_mut().zip(t) {
            let x = x.as_u64().filter(|&x| x >= 1).ok_or_else(|| bad("elements are 1-based integers"))?;
            *o = x as usize - 1;
        }
        triples.push(out);
    }
    Matroid3::new(n, triples)
}

pub fn read_matroid(path: impl AsRef<Path>) -> Result<Matroid3> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::MalformedInput(format!("invalid JSON: {e}")))?;
    parse_matroid(&v)
}

pub fn matroid_to_json(m: &Matroid3) -> Value {
    let nb: Vec<Value> = m.nonbases.iter().map(|t| json!([t[0] + 1, t[1] + 1, t[2] + 1])).collect();
    json!({"n": m.n, "nonbases": nb})
}
