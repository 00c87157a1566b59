use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::exactnum::{FieldElement, QuadField, Rational};

/// Exponent triple of `x^i y^j z^k`.
///
/// Ordered degree-lexicographically with `x > y > z`; iteration over a
/// [`DensePolynomial`] visits the largest monomial first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub u32, pub u32, pub u32);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0 + self.1 + self.2
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0 + o.0, self.1 + o.1, self.2 + o.2)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        (self.0 >= o.0 && self.1 >= o.1 && self.2 >= o.2).then(|| Monomial(self.0 - o.0, self.1 - o.1, self.2 - o.2))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then(other.0.cmp(&self.0)).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `r` in deg-lex order (`x^r` first, `z^r` last).
pub fn monomials(r: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((r + 1) * (r + 2) / 2) as usize);
    for i in (0..=r).rev() {
        for j in (0..=r - i).rev() {
            out.push(Monomial(i, j, r - i - j));
        }
    }
    out
}

/// Position of a degree-`r` monomial in [`monomials`]`(r)`.
pub fn monomial_index(m: &Monomial) -> usize {
    // monomials with larger x-exponent come first: sum over i' > i of (r - i' + 1)
    let r = m.degree() as usize;
    let i = m.0 as usize;
    let before: usize = (r - i) * (r - i + 1) / 2;
    before + (r - i - m.1 as usize)
}

/// `dim S_r = C(r+2, 2)`; zero for negative degrees.
pub fn dim_s(r: i64) -> i64 {
    if r < 0 {
        0
    } else {
        (r + 1) * (r + 2) / 2
    }
}

/// Homogeneous polynomial in `x, y, z`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct DensePolynomial {
    field: Arc<QuadField>,
    degree: u32,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl DensePolynomial {
    pub fn zero(field: &Arc<QuadField>, degree: u32) -> Self {
        DensePolynomial { field: field.clone(), degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        let mut p = Self::zero(c.field(), 0);
        p.add_term(Monomial(0, 0, 0), c);
        p
    }

    /// `a x + b y + c z`.
    pub fn linear(coeffs: &[FieldElement; 3]) -> Self {
        let mut p = Self::zero(coeffs[0].field(), 1);
        p.add_term(Monomial(1, 0, 0), coeffs[0].clone());
        p.add_term(Monomial(0, 1, 0), coeffs[1].clone());
        p.add_term(Monomial(0, 0, 1), coeffs[2].clone());
        p
    }

    pub fn monomial(field: &Arc<QuadField>, m: Monomial, c: FieldElement) -> Self {
        let mut p = Self::zero(field, m.degree());
        p.add_term(m, c);
        p
    }

    pub fn field(&self) -> &Arc<QuadField> {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        assert_eq!(m.degree(), self.degree, "inhomogeneous term");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &DensePolynomial) -> DensePolynomial {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, c.clone());
        }
        p
    }

    pub fn sub(&self, o: &DensePolynomial) -> DensePolynomial {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> DensePolynomial {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, k: &FieldElement) -> DensePolynomial {
        if k.is_zero() {
            return Self::zero(&self.field, self.degree);
        }
        self.map_coeffs(|c| c * k)
    }

    pub fn scale_rational(&self, q: &Rational) -> DensePolynomial {
        self.scale(&FieldElement::from_rational(&self.field, q.clone()))
    }

    fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> DensePolynomial {
        DensePolynomial {
            field: self.field.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul(&self, o: &DensePolynomial) -> DensePolynomial {
        let mut p = Self::zero(&self.field, self.degree + o.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }

    pub fn mul_monomial(&self, m: &Monomial) -> DensePolynomial {
        DensePolynomial {
            field: self.field.clone(),
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// Formal partial derivative in variable `var` (0 = x, 1 = y, 2 = z).
    pub fn partial(&self, var: usize) -> DensePolynomial {
        assert!(self.degree > 0, "derivative of a constant");
        let mut p = Self::zero(&self.field, self.degree - 1);
        for (m, c) in &self.terms {
            let e = [m.0, m.1, m.2][var];
            if e == 0 {
                continue;
            }
            let mut n = [m.0, m.1, m.2];
            n[var] -= 1;
            let k = FieldElement::from_int(&self.field, e as i64);
            p.add_term(Monomial(n[0], n[1], n[2]), c * &k);
        }
        p
    }

    pub fn eval(&self, pt: &[FieldElement; 3]) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for (m, c) in &self.terms {
            let v = &(&pt[0].pow(m.0) * &pt[1].pow(m.1)) * &pt[2].pow(m.2);
            acc = &acc + &(c * &v);
        }
        acc
    }

    /// `p(L_0, L_1, L_2)` where `L_i = forms[i] . (x, y, z)`.
    pub fn substitute_linear(&self, forms: &[[FieldElement; 3]; 3]) -> DensePolynomial {
        let d = self.degree;
        let powers: Vec<Vec<DensePolynomial>> = forms
            .iter()
            .map(|l| {
                let lin = DensePolynomial::linear(l);
                let mut v = vec![DensePolynomial::constant(FieldElement::one(&self.field))];
                for e in 1..=d as usize {
                    let next = v[e - 1].mul(&lin);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(&self.field, d);
        for (m, c) in &self.terms {
            let t = powers[0][m.0 as usize].mul(&powers[1][m.1 as usize]).mul(&powers[2][m.2 as usize]);
            out = out.add(&t.scale(c));
        }
        out
    }

    /// Exact quotient by the linear form `l`; `None` if `l` does not divide `self`.
    pub fn div_linear(&self, l: &[FieldElement; 3]) -> Option<DensePolynomial> {
        if self.is_zero() {
            return Some(Self::zero(&self.field, self.degree.saturating_sub(1)));
        }
        // divide along the first variable with a nonzero coefficient
        let var = (0..3).find(|&v| !l[v].is_zero())?;
        let lead_inv = l[var].inv().ok()?;
        let mut rem = self.clone();
        let mut q = Self::zero(&self.field, self.degree - 1);
        loop {
            // largest term divisible by the chosen variable
            let next = rem.terms.iter().find(|(m, _)| [m.0, m.1, m.2][var] > 0).map(|(m, c)| (*m, c.clone()));
            let Some((m, c)) = next else { break };
            let mut e = [m.0, m.1, m.2];
            e[var] -= 1;
            let qm = Monomial(e[0], e[1], e[2]);
            let qc = &c * &lead_inv;
            q.add_term(qm, qc.clone());
            let sub = DensePolynomial::linear(l).mul(&DensePolynomial::monomial(&self.field, qm, qc));
            rem = rem.sub(&sub);
        }
        rem.is_zero().then_some(q)
    }
}

impl fmt::Debug for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (v, e) in ["x", "y", "z"].iter().zip([m.0, m.1, m.2]) {
                match e {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_and_index() {
        let ms = monomials(3);
        assert_eq!(ms.len(), 10);
        assert_eq!(ms[0], Monomial(3, 0, 0));
        assert_eq!(ms[1], Monomial(2, 1, 0));
        assert_eq!(ms[9], Monomial(0, 0, 3));
        for (i, m) in ms.iter().enumerate() {
            assert_eq!(monomial_index(m), i);
        }
        let mut sorted = ms.clone();
        sorted.sort();
        assert_eq!(sorted, ms);
    }

    #[test]
    fn linear_division() {
        let k = QuadField::gaussian();
        let f = |n| FieldElement::from_int(&k, n);
        let i = FieldElement::alpha(&k).unwrap();
        let l1 = [f(1), i.clone(), f(0)];
        let l2 = [f(0), f(1), f(-1)];
        let p = DensePolynomial::linear(&l1).mul(&DensePolynomial::linear(&l2));
        let q = p.div_linear(&l1).unwrap();
        assert_eq!(q, DensePolynomial::linear(&l2));
        assert!(p.div_linear(&[f(1), f(0), f(0)]).is_none());
    }
}
