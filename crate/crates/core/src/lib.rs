//! Exact analysis of projective line arrangements.
//!
//! Weak combinatorics and matroids of an arrangement, the graded module of
//! Jacobian syzygies (minimal degree, exponents, relation degrees, Milnor
//! algebra resolution shape), the parametrized realization families used to
//! produce Ziegler pairs, and the verdicts that compare two arrangements.

pub mod arrangement;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod matroid;
pub mod realization;
pub mod syzygy;

pub use error::{Error, Result};
