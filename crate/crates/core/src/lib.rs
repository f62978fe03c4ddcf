//! Workbench for potential (Jacobi) algebras.
//!
//! Given a cyclically invariant element F of the free algebra K<x1,..,xn>,
//! the quotient by the ideal generated by its cyclic derivatives is the
//! potential algebra A_F. This crate computes degree-truncated noncommutative
//! Groebner bases of that ideal, graded and truncated Hilbert series, the
//! Golod-Shafarevich-Vinberg type lower bound, growth classification, and
//! runs zero-divisor and genericity experiments at desk scale.

pub mod analysis;
pub mod error;
pub mod field;
pub mod free_algebra;
pub mod groebner;
pub mod hilbert;
pub mod linalg;
pub mod parser;
pub mod potential;
pub mod report;

pub use error::Error;
pub use field::{FieldSpec, Scalar};
pub use free_algebra::{NCPoly, Word};
pub use potential::Potential;
