use std::sync::Arc;

use super::echelon::{Echelon, ZqRing};
use super::field::{same_field, FieldElement, QuadField};
use crate::error::{Error, Result};

/// Dense rectangular matrix over a single [`QuadField`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Arc<QuadField>,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn zeros(field: &Arc<QuadField>, rows: usize, cols: usize) -> Self {
        ExactMatrix { field: field.clone(), rows, cols, entries: vec![FieldElement::zero(field); rows * cols] }
    }

    pub fn from_rows(field: &Arc<QuadField>, cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::MalformedInput(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            for x in r {
                if !same_field(x.field(), field) {
                    return Err(Error::FieldMismatch);
                }
                entries.push(x);
            }
        }
        Ok(ExactMatrix { field: field.clone(), rows: nrows, cols, entries })
    }

    pub fn identity(field: &Arc<QuadField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one(field));
        }
        m
    }

    pub fn field(&self) -> &Arc<QuadField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        assert!(same_field(x.field(), &self.field), "field mismatch");
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(FieldElement::zero(&self.field), |acc, (x, y)| &acc + &(x * y)))
            .collect()
    }

    fn echelon(&self) -> Echelon {
        let ring = ZqRing::new(&self.field);
        let mut e = Echelon::new(ring.clone(), self.cols);
        for i in 0..self.rows {
            e.insert(ring.integral_row(self.row(i)));
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of the right kernel. Vector `k` has a 1 in the `k`-th non-pivot
    /// column and 0 in every other non-pivot column (reduced echelon normalization),
    /// so the output depends only on the matrix.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let e = self.echelon();
        e.free_columns().into_iter().map(|f| e.kernel_vector_field(f)).collect()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<FieldElement>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = FieldElement::one(&self.field);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return FieldElement::zero(&self.field);
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let inv = a[c][c].inv().expect("nonzero pivot");
            det = &det * &a[c][c];
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[r][j] = &a[r][j] - &t;
                }
            }
        }
        det
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| FieldElement::from_int(&self.field, (i == j) as i64)));
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::SingularTransform)?;
            a.swap(p, c);
            let inv = a[c][c].inv()?;
            for j in 0..2 * n {
                a[c][j] = &a[c][j] * &inv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[r][j] = &a[r][j] - &t;
                }
            }
        }
        let rows = a.into_iter().map(|r| r[n..].to_vec()).collect();
        ExactMatrix::from_rows(&self.field, n, rows)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }
}

/// Free-function form of [`ExactMatrix::kernel_basis`].
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<FieldElement>> {
    m.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> ExactMatrix {
        let k = QuadField::rationals();
        let cols = rows[0].len();
        ExactMatrix::from_rows(
            &k,
            cols,
            rows.iter().map(|r| r.iter().map(|&x| FieldElement::from_int(&k, x)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let k = QuadField::rationals();
        assert!(ExactMatrix::identity(&k, 3).kernel_basis().is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let k = QuadField::rationals();
        let b = ExactMatrix::zeros(&k, 2, 5).kernel_basis();
        assert_eq!(b.len(), 5);
        for (i, v) in b.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
            }
        }
    }

    #[test]
    fn dependent_rows() {
        // hand reduction: x + 2y + 3z = 0 gives kernel {(-2,1,0), (-3,0,1)}
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let b = m.kernel_basis();
        assert_eq!(b.len(), 2);
        let k = QuadField::rationals();
        let f = |x| FieldElement::from_int(&k, x);
        assert_eq!(b[0], vec![f(-2), f(1), f(0)]);
        assert_eq!(b[1], vec![f(-3), f(0), f(1)]);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let k = QuadField::rationals();
        assert_eq!(m.determinant(), FieldElement::from_int(&k, 18));
        let inv = m.inverse().unwrap();
        for i in 0..3 {
            let col: Vec<_> = (0..3).map(|r| inv.get(r, i).clone()).collect();
            let e = m.mul_vec(&col);
            for (r, x) in e.iter().enumerate() {
                assert_eq!(x.is_one(), r == i);
                assert!(r == i || x.is_zero());
            }
        }
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::SingularTransform));
    }

    #[test]
    fn kernel_over_extension() {
        let k = QuadField::golden();
        let phi = FieldElement::alpha(&k).unwrap();
        let one = FieldElement::one(&k);
        // row (phi, -1, phi^2): kernel dimension 2, each vector annihilated exactly
        let m = ExactMatrix::from_rows(&k, 3, vec![vec![phi.clone(), -&one, &phi * &phi]]).unwrap();
        let b = m.kernel_basis();
        assert_eq!(b.len(), 2);
        for v in &b {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }
}
