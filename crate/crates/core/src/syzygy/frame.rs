//! A projective frame chosen so that the integral line normals are small.
//!
//! Exact elimination cost grows quickly with coefficient height, and a random
//! change of coordinates makes every condition row dense and tall. Everything
//! the engine reports is invariant under `PGL(3)`, so the scan runs on the
//! image of the arrangement in which three of its lines become `x, y, z`,
//! rescaled to keep the rest short, and exact syzygies are pulled back afterwards.

use crate::arrangement::{canonical_projective, DensePolynomial};
use crate::exactnum::echelon::ZqRing;
use crate::exactnum::{ExactMatrix, FieldElement};

/// How many candidate frames are scored before the best one is kept.
const MAX_CANDIDATES: usize = 30;

#[derive(Clone, Debug)]
pub(crate) struct Frame {
    /// Line normals in the new coordinates, `T n_H`.
    pub normals: Vec<[FieldElement; 3]>,
    /// `M` with new point coordinates `y = M x`.
    forward: ExactMatrix,
    /// `M^{-1} = T^t`, which carries vector fields back.
    back: ExactMatrix,
}

fn column(m: &ExactMatrix, n: &[FieldElement; 3]) -> [FieldElement; 3] {
    let v = m.mul_vec(n);
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

/// Normal map `T` sending `n_1, n_2, n_3` to `e_1, e_2, e_3`, followed by a
/// diagonal rescaling that makes the later lines' coordinates agree where it
/// can. `None` if the three lines are concurrent.
fn normal_map(lines: &[[FieldElement; 3]], a: usize, b: usize, c: usize) -> Option<ExactMatrix> {
    let k = lines[a][0].field();
    let rows = (0..3).map(|i| [a, b, c].iter().map(|&j| lines[j][i].clone()).collect()).collect();
    let t = ExactMatrix::from_rows(k, 3, rows).ok()?.inverse().ok()?;
    let mut scale: [Option<FieldElement>; 3] = [Some(FieldElement::one(k)), None, None];
    for l in lines {
        let v = column(&t, l);
        for j in 0..3 {
            if scale[j].is_some() || v[j].is_zero() {
                continue;
            }
            // v_i s_i = v_j s_j for some already scaled coordinate i
            if let Some(i) = (0..3).find(|&i| scale[i].is_some() && !v[i].is_zero()) {
                let si = scale[i].clone().unwrap();
                scale[j] = Some(&(&v[i] * &si) * &v[j].inv().ok()?);
            }
        }
    }
    let mut t = t;
    for (i, s) in scale.into_iter().enumerate() {
        let Some(s) = s else { continue };
        for j in 0..3 {
            let x = t.get(i, j) * &s;
            t.set(i, j, x);
        }
    }
    Some(t)
}

fn height(ring: &ZqRing, normals: &[[FieldElement; 3]]) -> u64 {
    normals.iter().flat_map(|n| ring.integral_row(n)).map(|(_, z)| z.a.bits() + z.b.bits()).sum()
}

impl Frame {
    /// Best frame among the first few candidates; `None` when the lines are
    /// already no taller.
    pub fn choose(lines: &[[FieldElement; 3]]) -> Option<Frame> {
        let n = lines.len();
        let ring = ZqRing::new(lines.first()?[0].field());
        let mut best = (height(&ring, lines), None);
        let mut seen = 0;
        'outer: for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let Some(t) = normal_map(lines, a, b, c) else { continue };
                    let normals: Vec<[FieldElement; 3]> =
                        lines.iter().map(|l| canonical_projective(&column(&t, l)).expect("nonzero normal")).collect();
                    let h = height(&ring, &normals);
                    if h < best.0 {
                        best = (h, Some((t, normals)));
                    }
                    seen += 1;
                    if seen >= MAX_CANDIDATES {
                        break 'outer;
                    }
                }
            }
        }
        let (t, normals) = best.1?;
        let back = t.transpose();
        let forward = back.inverse().expect("frame map is invertible");
        Some(Frame { normals, forward, back })
    }

    /// `theta(x) = M^{-1} theta'(M x)` for a vector field given in new coordinates.
    pub fn pull_back(&self, comps: [&DensePolynomial; 3]) -> [DensePolynomial; 3] {
        let m = &self.forward;
        let forms: [[FieldElement; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| m.get(i, j).clone()));
        let sub: Vec<DensePolynomial> = comps.iter().map(|p| p.substitute_linear(&forms)).collect();
        std::array::from_fn(|i| {
            (0..3).fold(DensePolynomial::zero(sub[0].field(), sub[0].degree()), |acc, j| {
                acc.add(&sub[j].scale(self.back.get(i, j)))
            })
        })
    }
}
