//! Exact arithmetic over `Q` and quadratic extensions, and exact linear algebra.

pub mod echelon;
mod field;
mod matrix;
pub mod modp;
mod rational;

pub use field::{element_arithmetic, ArithOp, FieldElement, QuadField};
pub use matrix::{kernel_basis, ExactMatrix};
pub use rational::{format_rational, is_rational_square, parse_rational, rational, Rational};

pub(crate) use field::same_field;
