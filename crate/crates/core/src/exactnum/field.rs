use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, is_rational_square, Rational};
use crate::error::{Error, Result};

/// Either `Q` itself or `Q(a)` with `a^2 = c1*a + c0` irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    ext: Option<(Rational, Rational)>,
}

impl QuadField {
    pub fn rationals() -> Arc<QuadField> {
        Arc::new(QuadField { ext: None })
    }

    /// `Q(a)` with `a^2 = c1*a + c0`. Fails if `t^2 - c1 t - c0` has a rational root.
    pub fn quadratic(c1: Rational, c0: Rational) -> Result<Arc<QuadField>> {
        let disc = &c1 * &c1 + Rational::from_integer(4.into()) * &c0;
        if is_rational_square(&disc) {
            return Err(Error::ReducibleMinimalPolynomial { c1: format_rational(&c1), c0: format_rational(&c0) });
        }
        Ok(Arc::new(QuadField { ext: Some((c1, c0)) }))
    }

    /// `Q(i)`, `i^2 = -1`.
    pub fn gaussian() -> Arc<QuadField> {
        Self::quadratic(Rational::zero(), -Rational::one()).unwrap()
    }

    /// `Q(phi)`, `phi^2 = phi + 1`.
    pub fn golden() -> Arc<QuadField> {
        Self::quadratic(Rational::one(), Rational::one()).unwrap()
    }

    /// `Q(a)` with `a^2 = n` for a non-square integer `n`.
    pub fn sqrt(n: i64) -> Result<Arc<QuadField>> {
        Self::quadratic(Rational::zero(), Rational::from_integer(n.into()))
    }

    pub fn is_rational(&self) -> bool {
        self.ext.is_none()
    }

    /// `(c1, c0)` of the defining relation, `None` for `Q`.
    pub fn relation(&self) -> Option<(&Rational, &Rational)> {
        self.ext.as_ref().map(|(c1, c0)| (c1, c0))
    }

    pub(crate) fn c1(&self) -> Rational {
        self.ext.as_ref().map(|e| e.0.clone()).unwrap_or_else(Rational::zero)
    }

    pub(crate) fn c0(&self) -> Rational {
        self.ext.as_ref().map(|e| e.1.clone()).unwrap_or_else(Rational::zero)
    }

    /// `Q`, or e.g. `Q(a), a^2 = a + 1`.
    pub fn describe(&self) -> String {
        let Some((c1, c0)) = &self.ext else { return "Q".to_string() };
        let mut rhs = match (c1.is_zero(), c1.is_one(), (-c1).is_one()) {
            (true, ..) => String::new(),
            (_, true, _) => "a".to_string(),
            (_, _, true) => "-a".to_string(),
            _ => format!("{c1}*a"),
        };
        if rhs.is_empty() {
            rhs = c0.to_string();
        } else if c0.is_negative() {
            rhs = format!("{rhs} - {}", -c0);
        } else if !c0.is_zero() {
            rhs = format!("{rhs} + {c0}");
        }
        format!("Q(a), a^2 = {rhs}")
    }
}

/// `a + b*alpha` in a [`QuadField`]. Always canonical, so derived equality is
/// value equality.
#[derive(Clone)]
pub struct FieldElement {
    a: Rational,
    b: Rational,
    field: Arc<QuadField>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

pub(crate) fn same_field(x: &Arc<QuadField>, y: &Arc<QuadField>) -> bool {
    Arc::ptr_eq(x, y) || x == y
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b = if self.b.is_one() {
            "a".to_string()
        } else if (-&self.b).is_one() {
            "-a".to_string()
        } else {
            format!("{}*a", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{}", b)
        } else if b.starts_with('-') {
            write!(f, "{}{}", self.a, b)
        } else {
            write!(f, "{}+{}", self.a, b)
        }
    }
}

impl FieldElement {
    pub fn new(field: &Arc<QuadField>, a: Rational, b: Rational) -> Result<Self> {
        if field.is_rational() && !b.is_zero() {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { a, b, field: field.clone() })
    }

    pub fn from_rational(field: &Arc<QuadField>, a: Rational) -> Self {
        FieldElement { a, b: Rational::zero(), field: field.clone() }
    }

    pub fn from_int(field: &Arc<QuadField>, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<QuadField>) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Arc<QuadField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The generator `alpha`; fails over `Q`.
    pub fn alpha(field: &Arc<QuadField>) -> Result<Self> {
        Self::new(field, Rational::zero(), Rational::one())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> &Arc<QuadField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if same_field(&self.field, &rhs.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(FieldElement { a: &self.a + &rhs.a, b: &self.b + &rhs.b, field: self.field.clone() })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(FieldElement { a: &self.a - &rhs.a, b: &self.b - &rhs.b, field: self.field.clone() })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        if self.b.is_zero() && rhs.b.is_zero() {
            return Ok(Self::from_rational(&self.field, &self.a * &rhs.a));
        }
        // (a + b t)(c + d t) with t^2 = c1 t + c0
        let bd = &self.b * &rhs.b;
        let a = &self.a * &rhs.a + &bd * self.field.c0();
        let b = &self.a * &rhs.b + &self.b * &rhs.a + bd * self.field.c1();
        Ok(FieldElement { a, b, field: self.field.clone() })
    }

    /// `N(x) = x * conj(x)`, a rational.
    pub fn norm(&self) -> Rational {
        // conj(t) = c1 - t, t * conj(t) = -c0
        &self.a * &self.a + &self.a * &self.b * self.field.c1() - &self.b * &self.b * self.field.c0()
    }

    /// Galois conjugate `a + b*(c1 - alpha)`.
    pub fn conjugate(&self) -> Self {
        FieldElement { a: &self.a + &self.b * self.field.c1(), b: -&self.b, field: self.field.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::from_rational(&self.field, self.a.recip()));
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(FieldElement { a: c.a / &n, b: c.b / &n, field: self.field.clone() })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        self.checked_mul(&rhs.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElement { a: &self.a * q, b: &self.b * q, field: self.field.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_negative_rational(&self) -> bool {
        self.b.is_zero() && self.a.is_negative()
    }
}

/// Operator forms panic on a field mismatch; use the `checked_*` methods when
/// operands may come from different fields.
impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { a: -&self.a, b: -&self.b, field: self.field.clone() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// One exact field operation; both operands must share a field.
pub fn element_arithmetic(lhs: &FieldElement, rhs: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => lhs.checked_add(rhs),
        ArithOp::Sub => lhs.checked_sub(rhs),
        ArithOp::Mul => lhs.checked_mul(rhs),
        ArithOp::Div => lhs.checked_div(rhs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn gaussian_difference_of_squares() {
        let k = QuadField::gaussian();
        let one = FieldElement::one(&k);
        let i = FieldElement::alpha(&k).unwrap();
        let p = element_arithmetic(&(&one + &i), &(&one - &i), ArithOp::Mul).unwrap();
        assert_eq!(p, FieldElement::from_int(&k, 2));
    }

    #[test]
    fn golden_ratio_relation() {
        let k = QuadField::golden();
        let phi = FieldElement::alpha(&k).unwrap();
        let sq = &phi * &phi;
        assert_eq!(sq, &FieldElement::one(&k) + &phi);
    }

    #[test]
    fn rationalize_sqrt2() {
        let k = QuadField::sqrt(2).unwrap();
        let s = FieldElement::alpha(&k).unwrap();
        let inv = element_arithmetic(&FieldElement::one(&k), &s, ArithOp::Div).unwrap();
        assert_eq!(inv, FieldElement::new(&k, q(0, 1), q(1, 2)).unwrap());
    }

    #[test]
    fn errors() {
        let k = QuadField::gaussian();
        let z = FieldElement::zero(&k);
        let one = FieldElement::one(&k);
        assert_eq!(element_arithmetic(&one, &z, ArithOp::Div), Err(Error::DivisionByZero));
        let g = QuadField::golden();
        assert_eq!(element_arithmetic(&one, &FieldElement::one(&g), ArithOp::Add), Err(Error::FieldMismatch));
        assert!(QuadField::sqrt(4).is_err());
        assert!(QuadField::quadratic(q(1, 1), q(2, 1)).is_err()); // t^2 - t - 2 = (t-2)(t+1)
        assert!(FieldElement::new(&QuadField::rationals(), q(1, 1), q(1, 1)).is_err());
    }

    #[test]
    fn non_integral_generator() {
        // a^2 = a/2 + 1/3
        let k = QuadField::quadratic(q(1, 2), q(1, 3)).unwrap();
        let a = FieldElement::alpha(&k).unwrap();
        let x = &(&a + &FieldElement::from_int(&k, 3)) * &a;
        let y = x.checked_div(&a).unwrap();
        assert_eq!(y, &a + &FieldElement::from_int(&k, 3));
    }
}
