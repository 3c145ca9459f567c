//! Adaptive integration of the Schrödinger ODE and its Riccati form over
//! real intervals with complex spectral parameter, plus bracketed root
//! finding and quadrature. Everything here is potential-agnostic plumbing
//! used by the higher-level modules.

mod ode;
mod quadrature;
mod riccati;
mod roots;

pub use ode::{integrate_schrodinger, sample_schrodinger};
pub use quadrature::{cumulative_integral, quadrature, quadrature_real, second_derivative};
pub use riccati::integrate_riccati;
pub use roots::{find_root_bracketed, minimize_bracketed, scan_sign_changes, sign_change_brackets, RootResult};

pub(crate) use ode::Rk45;

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Accuracy knobs shared by the integrators and the root finder.
#[derive(Debug, Clone)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
    pub max_steps: usize,
}

impl Tolerances {
    pub fn new(rel: f64, abs: f64, max_steps: usize) -> Result<Self> {
        if !(rel.is_finite() && rel >= 1e-14) {
            return Err(Error::InvariantViolation(format!(
                "relative tolerance {rel} must be finite and >= 1e-14"
            )));
        }
        if !(abs.is_finite() && abs >= 1e-300) {
            return Err(Error::InvariantViolation(format!(
                "absolute tolerance {abs} must be finite and >= 1e-300"
            )));
        }
        if max_steps == 0 {
            return Err(Error::InvariantViolation("max_steps must be positive".into()));
        }
        Ok(Self { rel, abs, max_steps })
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { rel: 1e-10, abs: 1e-12, max_steps: 1_000_000 }
    }
}

/// A sampled solution (φ, φ′) of the Schrödinger equation along a strictly
/// monotone abscissa sequence. The direction of `xs` records the direction
/// of integration.
#[derive(Debug, Clone)]
pub struct SolutionPath {
    xs: Vec<f64>,
    phi: Vec<Complex64>,
    dphi: Vec<Complex64>,
}

impl SolutionPath {
    pub fn new(xs: Vec<f64>, phi: Vec<Complex64>, dphi: Vec<Complex64>) -> Result<Self> {
        if xs.len() != phi.len() {
            return Err(Error::LengthMismatch { left: xs.len(), right: phi.len() });
        }
        if xs.len() != dphi.len() {
            return Err(Error::LengthMismatch { left: xs.len(), right: dphi.len() });
        }
        if xs.len() < 2 {
            return Err(Error::InvariantViolation("solution path needs at least 2 points".into()));
        }
        let increasing = xs[1] > xs[0];
        for w in xs.windows(2) {
            let ok = if increasing { w[1] > w[0] } else { w[1] < w[0] };
            if !ok {
                return Err(Error::InvariantViolation(format!(
                    "abscissae not strictly monotone near x = {}",
                    w[0]
                )));
            }
        }
        Ok(Self { xs, phi, dphi })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn phi(&self) -> &[Complex64] {
        &self.phi
    }

    pub fn dphi(&self) -> &[Complex64] {
        &self.dphi
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: at least two points
    }

    /// (x, φ, φ′) at the first recorded point.
    pub fn first(&self) -> (f64, Complex64, Complex64) {
        (self.xs[0], self.phi[0], self.dphi[0])
    }

    /// (x, φ, φ′) at the last recorded point.
    pub fn last(&self) -> (f64, Complex64, Complex64) {
        let n = self.xs.len() - 1;
        (self.xs[n], self.phi[n], self.dphi[n])
    }

    /// Multiply φ and φ′ by a common factor (used for normalization and
    /// sign conventions).
    pub fn scale(&mut self, factor: Complex64) {
        for v in &mut self.phi {
            *v *= factor;
        }
        for v in &mut self.dphi {
            *v *= factor;
        }
    }

    /// Reverse the traversal order in place (ascending ↔ descending).
    pub fn reverse(&mut self) {
        self.xs.reverse();
        self.phi.reverse();
        self.dphi.reverse();
    }
}
