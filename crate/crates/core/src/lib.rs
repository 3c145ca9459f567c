//! Spectral solvers for one-dimensional Schrödinger operators with
//! transparent boundary conditions.
//!
//! The crate computes Weyl-Titchmarsh coefficients `m±(λ)` of half-line
//! Schrödinger operators (closed forms where available, a Riccati-based
//! numeric method otherwise) and uses them to pose energy-dependent
//! boundary-value problems on finite intervals:
//!
//! * [`spectrum::find_spectrum`] solves the eigenvalue problem with
//!   transparent, absorbing, Dirichlet or Robin rules per endpoint. With
//!   transparent rules the finite-interval spectrum reproduces the
//!   whole-line point spectrum exactly.
//! * [`resolvent::solve_tbc_bvp`] solves the inhomogeneous problem
//!   `(-d²/dx² + V - λ)φ = g` with transparent conditions, which yields the
//!   compressed whole-line resolvent applied to the trivially extended
//!   source.
//!
//! Everything is pure: no global state, all entry points are safe to call
//! concurrently, and grid sweeps are parallelized internally with rayon.

pub mod error;
pub mod numerics;
pub mod potentials;
pub mod resolvent;
pub mod spectrum;
pub mod validation;
pub mod weyl;

pub use error::Error;
pub use numerics::{SolutionPath, Tolerances};
pub use potentials::{Potential, PotentialConfig, PotentialKind};
pub use weyl::{Side, WeylEvaluation, WeylMethod};

/// Complex scalar used throughout: spectral parameters, solution values,
/// Weyl coefficients. Real energies are the `im == 0` case.
pub type Complex = num_complex::Complex64;
