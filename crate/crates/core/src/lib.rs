//! Multiparameter characteristic polynomials `det(z0 I + z1 A1 + ... + zn An)`
//! of matrix tuples, with tools built on top of them:
//!
//! * [`pencil`] computes the polynomial two independent ways (Laplace
//!   expansion and Newton's identities on traces of powers), its `z0`
//!   expansion coefficients, the cofactor matrix and pencil spectra.
//! * [`projpair`] decides unitary equivalence of pairs of orthogonal
//!   projections, reconstructs the polynomial from the two-projection
//!   canonical form and produces witness unitaries.
//! * [`coxeter`] builds reflection representations of Coxeter systems and
//!   recovers the Coxeter matrix back from their polynomial.

pub mod cli;
pub mod coxeter;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod pencil;
pub mod poly;
pub mod projpair;

pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use num_complex::Complex64;
pub use pencil::MatrixTuple;
pub use poly::MultiPoly;
