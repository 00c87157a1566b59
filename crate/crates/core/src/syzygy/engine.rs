//! Degree-by-degree minimal generators and relations of a graded submodule of
//! `S^3`, by graded Nakayama over exact linear algebra.
//!
//! Two models describe the graded pieces:
//!
//! * [`Model::Jacobian`]: `AR(f)_r` is the kernel of `S_r^3 -> S_{r+d-1}`,
//!   `(a,b,c) -> a f_x + b f_y + c f_z`.
//! * [`Model::Derivation`]: the logarithmic derivations `D(A)` of the line
//!   arrangement. `D(A) = S E + AR(f)` with `E` the Euler derivation, and
//!   `D'_r = {theta in D(A)_r : theta_1 has no monomial divisible by x}` is a
//!   complement of `S_{r-1} E`, so `D'` models `AR(f) = D(A) / S E`. The
//!   conditions "`alpha_H` divides `n_H . theta`" restricted to each line are
//!   sparse with small entries, unlike the dense Jacobian matrix.
//!
//! In degree `r` the piece is the kernel of a condition matrix; its free columns
//! are coordinates on it. Multiples `mu * g` of the generators found so far form
//! the columns of a matrix `T_r` over those coordinates: its rank is the part
//! already generated, coordinates missed by its row space give new generators,
//! and its kernel is the degree-`r` part of the relation module, where the same
//! scheme separates relations generated earlier from new minimal ones.

use rayon::prelude::*;

use crate::arrangement::{dim_s, monomial_index, monomials, Monomial};
use crate::exactnum::echelon::{normalize_content, Echelon, SparseRow, Zq, ZqRing};
use crate::exactnum::modp::{ModEchelon, ModP};

/// Sparse vector in the column layout of one degree.
pub type Vector = Vec<(u32, Zq)>;

/// One homogeneous term of a vector in `S^3`: component, monomial, coefficient.
pub type Term = (usize, Monomial, Zq);

#[derive(Clone, Debug)]
pub enum Model {
    /// Integral multiples of the three partials, as sparse term lists.
    Jacobian { d: u32, partials: [Vec<(Monomial, Zq)>; 3] },
    /// Integral line normals.
    Derivation { normals: Vec<[Zq; 3]> },
}

impl Model {
    fn ncols(&self, r: u32) -> usize {
        let s = dim_s(r as i64) as usize;
        match self {
            Model::Jacobian { .. } => 3 * s,
            Model::Derivation { .. } => (r as usize + 1) + 2 * s,
        }
    }

    /// Column of `(component, monomial)`; `None` for x-divisible monomials in the
    /// first component of the derivation model.
    fn encode(&self, c: usize, m: &Monomial) -> Option<usize> {
        let r = m.degree();
        let s = dim_s(r as i64) as usize;
        match self {
            Model::Jacobian { .. } => Some(c * s + monomial_index(m)),
            Model::Derivation { .. } => match c {
                0 => (m.0 == 0).then(|| (r - m.1) as usize),
                _ => Some(r as usize + 1 + (c - 1) * s + monomial_index(m)),
            },
        }
    }

    fn decode(&self, r: u32, col: usize, mons: &[Monomial]) -> (usize, Monomial) {
        let s = mons.len();
        match self {
            Model::Jacobian { .. } => (col / s, mons[col % s]),
            Model::Derivation { .. } => {
                let head = r as usize + 1;
                if col < head {
                    let j = r - col as u32;
                    (0, Monomial(0, j, r - j))
                } else {
                    let k = col - head;
                    (1 + k / s, mons[k % s])
                }
            }
        }
    }

    /// Condition matrix of degree `r`; its kernel is the graded piece.
    pub fn conditions(&self, ring: &ZqRing, r: u32) -> Echelon {
        let ncols = self.ncols(r);
        let mut e = Echelon::new(ring.clone(), ncols);
        for mut row in self.condition_rows(ring, r) {
            if row.is_empty() {
                continue;
            }
            normalize_content(&mut row);
            e.insert(row);
        }
        e
    }

    fn condition_rows(&self, ring: &ZqRing, r: u32) -> Vec<SparseRow> {
        let mons = monomials(r);
        match self {
            Model::Jacobian { d, partials } => {
                let mut rows: Vec<SparseRow> = vec![Vec::new(); dim_s((r + d - 1) as i64) as usize];
                for (c, p) in partials.iter().enumerate() {
                    for m in &mons {
                        let col = self.encode(c, m).unwrap() as u32;
                        for (t, z) in p {
                            rows[monomial_index(&t.mul(m))].push((col, z.clone()));
                        }
                    }
                }
                rows
            }
            Model::Derivation { normals } => {
                let mut out = Vec::with_capacity(normals.len() * (r as usize + 1));
                for n in normals {
                    let (p, q) = line_frame(n);
                    // powers of (P_v s + Q_v t) as sparse polynomials in t
                    let powers: Vec<Vec<Binary>> = (0..3).map(|v| binary_powers(ring, &p[v], &q[v], r)).collect();
                    let mut rows: Vec<SparseRow> = vec![Vec::new(); r as usize + 1];
                    for c in 0..3 {
                        if n[c].is_zero() {
                            continue;
                        }
                        for m in &mons {
                            let Some(col) = self.encode(c, m) else { continue };
                            let prod = binary_mul(
                                ring,
                                &binary_mul(ring, &powers[0][m.0 as usize], &powers[1][m.1 as usize]),
                                &powers[2][m.2 as usize],
                            );
                            for (l, z) in prod {
                                rows[l].push((col as u32, ring.mul(&n[c], &z)));
                            }
                        }
                    }
                    out.extend(rows);
                }
                out
            }
        }
    }

    /// Calls `f(col, negate, z)` for every contribution of `mu * v`, `v` given as
    /// terms, in the layout of the product's degree (after reduction modulo
    /// `S E` in the derivation model).
    fn for_each_product<Z>(&self, terms: &[(usize, Monomial, Z)], mu: &Monomial, mut f: impl FnMut(usize, bool, &Z)) {
        for (c, m, z) in terms {
            let t = m.mul(mu);
            match self {
                Model::Derivation { .. } if *c == 0 && t.0 > 0 => {
                    // x q E is subtracted: the term leaves theta_1, -y q and -z q
                    // appear in theta_2 and theta_3
                    let q = Monomial(t.0 - 1, t.1, t.2);
                    f(self.encode(1, &Monomial(q.0, q.1 + 1, q.2)).unwrap(), true, z);
                    f(self.encode(2, &Monomial(q.0, q.1, q.2 + 1)).unwrap(), true, z);
                }
                _ => f(self.encode(*c, &t).unwrap(), false, z),
            }
        }
    }

    fn multiply(&self, terms: &[Term], mu: &Monomial, out: &mut [Zq]) {
        self.for_each_product(
            terms,
            mu,
            |col, neg, z| {
                if neg {
                    sub_assign(&mut out[col], z)
                } else {
                    add_assign(&mut out[col], z)
                }
            },
        );
    }

    fn multiply_mod(&self, f: ModP, terms: &[(usize, Monomial, u64)], mu: &Monomial, out: &mut [u64]) {
        self.for_each_product(terms, mu, |col, neg, z| {
            out[col] = if neg { (out[col] + f.p - z) % f.p } else { (out[col] + z) % f.p };
        });
    }
}

fn add_assign(acc: &mut Zq, z: &Zq) {
    acc.a += &z.a;
    acc.b += &z.b;
}

fn sub_assign(acc: &mut Zq, z: &Zq) {
    acc.a -= &z.a;
    acc.b -= &z.b;
}

/// Sparse polynomial in `t` (the `s`-degree is implied).
type Binary = Vec<(usize, Zq)>;

/// Two points `P, Q` spanning the line `n . p = 0`.
fn line_frame(n: &[Zq; 3]) -> ([Zq; 3], [Zq; 3]) {
    let z = Zq::default;
    if !n[0].is_zero() {
        ([n[1].neg(), n[0].clone(), z()], [n[2].neg(), z(), n[0].clone()])
    } else if !n[1].is_zero() {
        ([Zq::from_i64(1), z(), z()], [z(), n[2].neg(), n[1].clone()])
    } else {
        ([Zq::from_i64(1), z(), z()], [z(), Zq::from_i64(1), z()])
    }
}

fn binary_powers(ring: &ZqRing, p: &Zq, q: &Zq, r: u32) -> Vec<Binary> {
    let mut base: Binary = Vec::new();
    if !p.is_zero() {
        base.push((0, p.clone()));
    }
    if !q.is_zero() {
        base.push((1, q.clone()));
    }
    let mut out = vec![vec![(0usize, Zq::from_i64(1))]];
    for e in 1..=r as usize {
        let next = binary_mul(ring, &out[e - 1], &base);
        out.push(next);
    }
    out
}

fn binary_mul(ring: &ZqRing, x: &Binary, y: &Binary) -> Binary {
    if x.len() == 1 && x[0].1.a == 1.into() && x[0].1.b == 0.into() {
        return y.iter().map(|(l, z)| (l + x[0].0, z.clone())).collect();
    }
    let len = x.iter().map(|t| t.0).max().unwrap_or(0) + y.iter().map(|t| t.0).max().unwrap_or(0) + 1;
    let mut acc = vec![Zq::default(); len];
    for (i, a) in x {
        for (j, b) in y {
            add_assign(&mut acc[i + j], &ring.mul(a, b));
        }
    }
    acc.into_iter().enumerate().filter(|(_, z)| !z.is_zero()).collect()
}

/// A minimal generator: degree and integral terms.
#[derive(Clone, Debug)]
pub struct Generator {
    pub degree: u32,
    pub terms: Vec<Term>,
}

/// A minimal relation: degree and its coefficients on the multiples
/// `mu * g_i`, as `(generator index, mu, coefficient)`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub degree: u32,
    pub terms: Vec<(usize, Monomial, Zq)>,
}

/// Everything one scan produces.
#[derive(Clone, Debug)]
pub struct GradedScan {
    /// `dims[r]` = dimension of the graded piece in degree `r`.
    pub dims: Vec<usize>,
    /// Generators in discovery order (non-decreasing degree).
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    /// `relation_multiples[r]` = rank of the span of multiples of earlier
    /// minimal relations inside the degree-`r` relation space.
    pub relation_multiple_rank: Vec<usize>,
    /// Dimension of the degree-`r` relation space.
    pub relation_dims: Vec<usize>,
}

/// Dimensions of the graded pieces in degrees `0..=cap`, computed in parallel.
pub fn dimensions(model: &Model, ring: &ZqRing, cap: u32) -> Vec<usize> {
    (0..=cap).into_par_iter().map(|r| model.conditions(ring, r).nullity()).collect()
}

/// Full scan up to degree `cap`.
pub fn scan(model: &Model, ring: &ZqRing, cap: u32) -> GradedScan {
    let echelons: Vec<Echelon> = (0..=cap).into_par_iter().map(|r| model.conditions(ring, r)).collect();
    let mut gens: Vec<Generator> = Vec::new();
    let mut rels: Vec<Relation> = Vec::new();
    let mut dims = Vec::new();
    let mut rel_dims = Vec::new();
    let mut rel_ranks = Vec::new();
    let fp = ModP::for_ring(ring);
    let mut gens_mod: Vec<Vec<(usize, Monomial, u64)>> = Vec::new();
    for (r, cond) in echelons.iter().enumerate() {
        let r = r as u32;
        let mons = monomials(r);
        let free = cond.free_columns();
        dims.push(free.len());
        let mut coord_of = vec![u32::MAX; cond.ncols()];
        for (p, &f) in free.iter().enumerate() {
            coord_of[f] = p as u32;
        }

        // columns of T_r: multiples mu * g_i, generator by generator
        let mut offsets = Vec::with_capacity(gens.len());
        let mut nmult = 0usize;
        for g in &gens {
            offsets.push(nmult);
            nmult += dim_s((r - g.degree) as i64) as usize;
        }

        if let Some(known_rank) =
            certify_nothing_new(model, fp, r, &coord_of, free.len(), &gens_mod, &gens, &rels, &offsets, nmult)
        {
            rel_dims.push(nmult - free.len());
            rel_ranks.push(known_rank);
            continue;
        }
        let mut t_rows: Vec<SparseRow> = vec![Vec::new(); free.len()];
        let mut buf = vec![Zq::default(); cond.ncols()];
        for (i, g) in gens.iter().enumerate() {
            for (k, mu) in monomials(r - g.degree).iter().enumerate() {
                model.multiply(&g.terms, mu, &mut buf);
                let col = (offsets[i] + k) as u32;
                for (j, z) in buf.iter_mut().enumerate() {
                    if z.is_zero() {
                        continue;
                    }
                    let z = std::mem::take(z);
                    let p = coord_of[j];
                    if p != u32::MAX {
                        t_rows[p as usize].push((col, z));
                    }
                }
            }
        }
        let mut t = Echelon::new(cond.ring().clone(), nmult);
        let mut spanned = vec![false; free.len()];
        for (p, mut row) in t_rows.into_iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            normalize_content(&mut row);
            spanned[p] = t.insert(row);
        }

        // coordinates outside the independent rows of T_r give new generators
        for (p, &f) in free.iter().enumerate() {
            if spanned[p] {
                continue;
            }
            let v = cond.kernel_vector(f);
            let terms: Vec<Term> = v
                .into_iter()
                .enumerate()
                .filter(|(_, z)| !z.is_zero())
                .map(|(col, z)| {
                    let (c, m) = model.decode(r, col, &mons);
                    (c, m, z)
                })
                .collect();
            gens_mod.push(terms.iter().map(|(c, m, z)| (*c, *m, fp.reduce(z))).collect());
            gens.push(Generator { degree: r, terms });
        }

        // relation space: kernel of T_r, with coordinates on its free columns
        let rel_free = t.free_columns();
        rel_dims.push(rel_free.len());
        let mut rel_coord = vec![u32::MAX; nmult];
        for (p, &c) in rel_free.iter().enumerate() {
            rel_coord[c] = p as u32;
        }
        let mut known = Echelon::new(cond.ring().clone(), rel_free.len());
        for rel in &rels {
            for nu in monomials(r - rel.degree) {
                let mut row: SparseRow = Vec::new();
                for (i, mu, z) in &rel.terms {
                    let m = mu.mul(&nu);
                    let col = offsets[*i] + monomial_index(&m);
                    let p = rel_coord[col];
                    if p != u32::MAX {
                        row.push((p, z.clone()));
                    }
                }
                row.sort_by_key(|e| e.0);
                if !row.is_empty() {
                    normalize_content(&mut row);
                    known.insert(row);
                }
            }
        }
        rel_ranks.push(known.rank());
        for (p, &c) in rel_free.iter().enumerate() {
            if known.is_pivot(p) {
                continue;
            }
            let v = t.kernel_vector(c);
            let mut terms = Vec::new();
            for (i, g) in gens.iter().enumerate().filter(|(_, g)| g.degree < r) {
                let base = offsets[i];
                let len = dim_s((r - g.degree) as i64) as usize;
                let gm = monomials(r - g.degree);
                for k in 0..len {
                    if !v[base + k].is_zero() {
                        terms.push((i, gm[k], v[base + k].clone()));
                    }
                }
            }
            rels.push(Relation { degree: r, terms });
        }
    }
    GradedScan { dims, generators: gens, relations: rels, relation_multiple_rank: rel_ranks, relation_dims: rel_dims }
}

/// Cheap exact certificate that degree `r` brings neither generators nor
/// relations: modulo `p` the multiples of the generators already have full rank
/// `dim`, and the multiples of the relations already fill the kernel of `T_r`.
/// Ranks mod `p` never exceed the true ones, which in turn are at most `dim`
/// and `nmult - dim`. Returns the rank of the relation multiples.
#[allow(clippy::too_many_arguments)]
fn certify_nothing_new(
    model: &Model,
    fp: ModP,
    r: u32,
    coord_of: &[u32],
    dim: usize,
    gens_mod: &[Vec<(usize, Monomial, u64)>],
    gens: &[Generator],
    rels: &[Relation],
    offsets: &[usize],
    nmult: usize,
) -> Option<usize> {
    if nmult < dim {
        return None;
    }
    let mut t = ModEchelon::new(fp, dim);
    let mut buf = vec![0u64; coord_of.len()];
    'outer: for (g, terms) in gens.iter().zip(gens_mod) {
        for mu in monomials(r - g.degree) {
            model.multiply_mod(fp, terms, &mu, &mut buf);
            let mut row = vec![0u64; dim];
            for (j, z) in buf.iter_mut().enumerate() {
                if *z != 0 && coord_of[j] != u32::MAX {
                    row[coord_of[j] as usize] = *z;
                }
                *z = 0;
            }
            t.insert(row);
            if t.rank() == dim {
                break 'outer;
            }
        }
    }
    if t.rank() < dim {
        return None;
    }
    let want = nmult - dim;
    let mut known = ModEchelon::new(fp, nmult);
    if want > 0 {
        'rels: for rel in rels {
            for nu in monomials(r - rel.degree) {
                let mut row = vec![0u64; nmult];
                for (i, mu, z) in &rel.terms {
                    row[offsets[*i] + monomial_index(&mu.mul(&nu))] = fp.reduce(z);
                }
                known.insert(row);
                if known.rank() == want {
                    break 'rels;
                }
            }
        }
    }
    (known.rank() == want).then_some(want)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::QuadField;

    fn zq(v: [i64; 3]) -> [Zq; 3] {
        v.map(Zq::from_i64)
    }

    #[test]
    fn triangle_derivations() {
        // D'(xyz) is spanned by (0, y, 0) and (0, 0, z) in degree 1
        let ring = ZqRing::new(&QuadField::rationals());
        let model = Model::Derivation { normals: vec![zq([1, 0, 0]), zq([0, 1, 0]), zq([0, 0, 1])] };
        let s = scan(&model, &ring, 3);
        assert_eq!(s.dims, vec![0, 2, 6, 12]);
        let degs: Vec<u32> = s.generators.iter().map(|g| g.degree).collect();
        assert_eq!(degs, vec![1, 1]);
        assert!(s.relations.is_empty());
    }

    #[test]
    fn frame_points_lie_on_line() {
        for n in [[2, 3, 5], [0, 1, 4], [0, 0, 1]] {
            let (p, q) = line_frame(&zq(n));
            let dot = |u: &[Zq; 3]| (0..3).map(|i| &u[i].a * n[i]).sum::<num_bigint::BigInt>();
            assert_eq!(dot(&p), 0.into());
            assert_eq!(dot(&q), 0.into());
        }
    }
}
