//! Sparse fraction-free row echelon form over `Z[beta]`.
//!
//! Every field this crate handles is `Q` or `Q(alpha)`. Scaling the generator to
//! `beta = k * alpha` makes it integral (`beta^2 = m1*beta + m0`, `m1, m0` integers),
//! so each row can be cleared of denominators and eliminated with ring
//! operations only. Rows are divided by the integer content of their entries to
//! keep coefficient growth in check; pivot rows are further multiplied by the
//! conjugate of their leading entry so every pivot is a positive integer.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{FieldElement, QuadField};
use super::rational::Rational;

/// `a + b*beta`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Zq {
    pub a: BigInt,
    pub b: BigInt,
}

impl Zq {
    pub fn int(a: BigInt) -> Self {
        Zq { a, b: BigInt::zero() }
    }

    pub fn from_i64(a: i64) -> Self {
        Zq::int(a.into())
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub(crate) fn scale_int(&mut self, k: &BigInt) {
        self.a *= k;
        if !self.b.is_zero() {
            self.b *= k;
        }
    }

    pub(crate) fn div_int(&mut self, k: &BigInt) {
        self.a /= k;
        if !self.b.is_zero() {
            self.b /= k;
        }
    }

    pub(crate) fn neg(&self) -> Zq {
        Zq { a: -&self.a, b: -&self.b }
    }
}

/// Arithmetic context for `Z[beta]`.
#[derive(Clone, Debug)]
pub struct ZqRing {
    field: Arc<QuadField>,
    /// `beta = k * alpha`
    k: BigInt,
    m1: BigInt,
    m0: BigInt,
}

impl ZqRing {
    pub fn new(field: &Arc<QuadField>) -> Self {
        match field.relation() {
            None => ZqRing { field: field.clone(), k: BigInt::one(), m1: BigInt::zero(), m0: BigInt::zero() },
            Some((c1, c0)) => {
                let k = c1.denom() * c0.denom();
                let kq = Rational::from_integer(k.clone());
                let m1 = (c1 * &kq).to_integer();
                let m0 = (c0 * &kq * &kq).to_integer();
                ZqRing { field: field.clone(), k, m1, m0 }
            }
        }
    }

    pub fn field(&self) -> &Arc<QuadField> {
        &self.field
    }

    pub fn is_rational(&self) -> bool {
        self.field.is_rational()
    }

    /// `(m1, m0)` with `beta^2 = m1 beta + m0`.
    pub fn relation(&self) -> (&BigInt, &BigInt) {
        (&self.m1, &self.m0)
    }

    #[inline]
    pub fn mul(&self, x: &Zq, y: &Zq) -> Zq {
        if x.b.is_zero() {
            if y.b.is_zero() {
                return Zq::int(&x.a * &y.a);
            }
            return Zq { a: &x.a * &y.a, b: &x.a * &y.b };
        }
        if y.b.is_zero() {
            return Zq { a: &x.a * &y.a, b: &x.b * &y.a };
        }
        let bd = &x.b * &y.b;
        let a = &x.a * &y.a + &bd * &self.m0;
        let b = &x.a * &y.b + &x.b * &y.a + &bd * &self.m1;
        Zq { a, b }
    }

    /// `acc -= x * y`
    #[inline]
    pub(crate) fn sub_mul(&self, acc: &mut Zq, x: &Zq, y: &Zq) {
        if x.b.is_zero() && y.b.is_zero() {
            acc.a -= &x.a * &y.a;
            return;
        }
        let p = self.mul(x, y);
        acc.a -= p.a;
        acc.b -= p.b;
    }

    pub fn conj(&self, x: &Zq) -> Zq {
        Zq { a: &x.a + &x.b * &self.m1, b: -&x.b }
    }

    /// Integer `x * conj(x)`.
    pub fn norm(&self, x: &Zq) -> BigInt {
        &x.a * &x.a + &x.a * &x.b * &self.m1 - &x.b * &x.b * &self.m0
    }

    /// Converts a field element into `(numerator in Z[beta], positive denominator)`.
    pub fn to_zq(&self, x: &FieldElement) -> (Zq, BigInt) {
        // a + b alpha = a + (b/k) beta
        let bq = x.b() / Rational::from_integer(self.k.clone());
        let den = x.a().denom().lcm(bq.denom());
        let dq = Rational::from_integer(den.clone());
        let a = (x.a() * &dq).to_integer();
        let b = (bq * dq).to_integer();
        (Zq { a, b }, den)
    }

    pub fn to_field(&self, x: &Zq, den: &BigInt) -> FieldElement {
        let d = Rational::from_integer(den.clone());
        let a = Rational::from_integer(x.a.clone()) / &d;
        let b = Rational::from_integer(&x.b * &self.k) / d;
        FieldElement::new(&self.field, a, b).expect("element of the ring's field")
    }

    /// Clears denominators of a row of field elements, returning a sparse integral row.
    pub fn integral_row(&self, row: &[FieldElement]) -> SparseRow {
        let mut den = BigInt::one();
        let conv: Vec<(Zq, BigInt)> = row.iter().map(|x| self.to_zq(x)).collect();
        for (_, d) in &conv {
            den = den.lcm(d);
        }
        let mut out: SparseRow = Vec::new();
        for (j, (z, d)) in conv.into_iter().enumerate() {
            if z.is_zero() {
                continue;
            }
            let m = &den / d;
            let mut z = z;
            z.scale_int(&m);
            out.push((j as u32, z));
        }
        normalize_content(&mut out);
        out
    }
}

pub type SparseRow = Vec<(u32, Zq)>;

fn gcd_into(g: &mut BigInt, x: &BigInt) {
    if !x.is_zero() && !g.is_one() {
        *g = g.gcd(x);
    }
}

fn content<'a>(entries: impl Iterator<Item = &'a Zq>) -> BigInt {
    let mut g = BigInt::zero();
    for z in entries {
        gcd_into(&mut g, &z.a);
        gcd_into(&mut g, &z.b);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides a sparse row by the gcd of all its integer components.
pub fn normalize_content(row: &mut SparseRow) {
    let g = content(row.iter().map(|(_, z)| z));
    if !g.is_zero() && !g.is_one() {
        for (_, z) in row.iter_mut() {
            z.div_int(&g);
        }
    }
}

/// Row echelon form built one row at a time. The pivot of a column is the first
/// inserted row whose reduction leads in that column.
#[derive(Clone, Debug)]
pub struct Echelon {
    ring: ZqRing,
    ncols: usize,
    pivot_of_col: Vec<u32>,
    rows: Vec<SparseRow>,
}

const NONE: u32 = u32::MAX;

/// Rows are reduced in a dense buffer; components get content-normalized once
/// this many non-unit rescalings have accumulated.
const RENORMALIZE_EVERY: u32 = 4;

impl Echelon {
    pub fn new(ring: ZqRing, ncols: usize) -> Self {
        Echelon { ring, ncols, pivot_of_col: vec![NONE; ncols], rows: Vec::new() }
    }

    pub fn ring(&self) -> &ZqRing {
        &self.ring
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col] != NONE
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    /// Reduces `row` against the current pivots; adds it as a new pivot row if
    /// something survives. Returns whether the row was independent.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        match self.reduce(row) {
            Some(r) => {
                let lead = r[0].0 as usize;
                self.pivot_of_col[lead] = self.rows.len() as u32;
                self.rows.push(r);
                true
            }
            None => false,
        }
    }

    /// Whether `row` lies in the row space (it is not inserted).
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_none()
    }

    fn reduce(&self, row: SparseRow) -> Option<SparseRow> {
        if row.is_empty() {
            return None;
        }
        let mut dense: Vec<Zq> = vec![Zq::default(); self.ncols];
        let mut start = row[0].0 as usize;
        for (j, z) in row {
            dense[j as usize] = z;
        }
        let mut rescaled = 0u32;
        loop {
            while start < self.ncols && dense[start].is_zero() {
                start += 1;
            }
            if start == self.ncols {
                return None;
            }
            let p = self.pivot_of_col[start];
            if p == NONE {
                break;
            }
            let prow = &self.rows[p as usize];
            let lead = &prow[0].1.a; // positive integer
            let mut v = std::mem::take(&mut dense[start]);
            let g = {
                let mut g = lead.clone();
                gcd_into(&mut g, &v.a);
                gcd_into(&mut g, &v.b);
                g
            };
            let mult = lead / &g;
            v.div_int(&g);
            if !mult.is_one() {
                for z in dense[start + 1..].iter_mut() {
                    if !z.is_zero() {
                        z.scale_int(&mult);
                    }
                }
                rescaled += 1;
            }
            for (j, pz) in &prow[1..] {
                self.ring.sub_mul(&mut dense[*j as usize], &v, pz);
            }
            start += 1;
            if rescaled >= RENORMALIZE_EVERY {
                let g = content(dense[start..].iter());
                if !g.is_zero() && !g.is_one() {
                    for z in dense[start..].iter_mut() {
                        if !z.is_zero() {
                            z.div_int(&g);
                        }
                    }
                }
                rescaled = 0;
            }
        }
        let mut out: SparseRow = dense
            .into_iter()
            .enumerate()
            .skip(start)
            .filter(|(_, z)| !z.is_zero())
            .map(|(j, z)| (j as u32, z))
            .collect();
        // make the lead a positive integer
        if !out[0].1.b.is_zero() {
            let c = self.ring.conj(&out[0].1);
            for (_, z) in out.iter_mut() {
                *z = self.ring.mul(z, &c);
            }
        }
        normalize_content(&mut out);
        if out[0].1.a.is_negative() {
            for (_, z) in out.iter_mut() {
                *z = z.neg();
            }
        }
        Some(out)
    }

    /// Kernel vector with `v[free] = 1` and `v[g] = 0` on every other free column,
    /// returned as an integral multiple (entries in `Z[beta]`, content 1) with the
    /// entry at `free` positive.
    pub fn kernel_vector(&self, free: usize) -> Vec<Zq> {
        assert!(!self.is_pivot(free), "column {free} is a pivot column");
        let mut w: Vec<Zq> = vec![Zq::default(); self.ncols];
        w[free] = Zq::from_i64(1);
        let mut pivots: Vec<(usize, usize)> =
            (0..free).filter(|&c| self.is_pivot(c)).map(|c| (c, self.pivot_of_col[c] as usize)).collect();
        pivots.sort_unstable_by_key(|x| std::cmp::Reverse(x.0));
        let mut rescaled = 0u32;
        for (pc, ri) in pivots {
            let row = &self.rows[ri];
            let mut s = Zq::default();
            for (j, z) in &row[1..] {
                let wj = &w[*j as usize];
                if !wj.is_zero() {
                    let p = self.ring.mul(z, wj);
                    s.a += p.a;
                    s.b += p.b;
                }
            }
            if s.is_zero() {
                continue;
            }
            let lead = &row[0].1.a;
            let mut g = lead.clone();
            gcd_into(&mut g, &s.a);
            gcd_into(&mut g, &s.b);
            let mult = lead / &g;
            s.div_int(&g);
            if !mult.is_one() {
                for z in w.iter_mut() {
                    if !z.is_zero() {
                        z.scale_int(&mult);
                    }
                }
                rescaled += 1;
            }
            w[pc] = s.neg();
            if rescaled >= RENORMALIZE_EVERY {
                let g = content(w.iter());
                if !g.is_one() {
                    for z in w.iter_mut() {
                        z.div_int(&g);
                    }
                }
                rescaled = 0;
            }
        }
        let g = content(w.iter());
        if !g.is_one() {
            for z in w.iter_mut() {
                z.div_int(&g);
            }
        }
        w
    }

    /// Same as [`Echelon::kernel_vector`] but normalized so that `v[free] = 1`.
    pub fn kernel_vector_field(&self, free: usize) -> Vec<FieldElement> {
        let w = self.kernel_vector(free);
        // w[free] is a positive integer: back-substitution only ever rescales by integers
        let den = w[free].a.clone();
        w.iter().map(|z| self.ring.to_field(z, &den)).collect()
    }
}
