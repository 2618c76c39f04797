//! Exact arithmetic for Jacobi forms of lattice index.
//!
//! The crate computes the invariants of maximal even positive definite
//! lattices, the local polynomials that govern Fourier coefficients of
//! Eisenstein series and lifts, a brute-force Siegel series oracle, Kohnen
//! plus space forms, and the coefficient formulas of the Jacobi and Maass
//! lifts. All arithmetic is exact.

pub mod arith;
pub mod checks;
pub mod error;
pub mod halfint;
pub mod jacobi;
pub mod lattice;
pub mod lifting;
pub mod local_factors;
pub mod siegel;

pub use error::{JflError, Result};
