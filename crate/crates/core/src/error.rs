//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The adaptive integrator ran out of its step budget, usually in a
    /// blow-up or extremely stiff region.
    #[error("step limit exceeded after {steps} steps near x = {x}")]
    StepLimitExceeded { steps: usize, x: f64 },

    /// Potential evaluation failed, e.g. a tabulated potential queried
    /// outside its table.
    #[error("potential '{label}' not evaluable at x = {x}: {reason}")]
    PotentialEval { label: String, x: f64, reason: String },

    /// `find_root_bracketed` was called without a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("length mismatch: {left} abscissae vs {right} values")]
    LengthMismatch { left: usize, right: usize },

    #[error("grids do not match: {0}")]
    GridMismatch(String),

    /// Malformed configuration document (unknown kind, bad parameter type).
    #[error("config error: {0}")]
    SchemaError(String),

    /// A domain-type invariant would be violated (non-monotone table,
    /// empty interval, tolerance out of range, ...).
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// A precondition of an operation does not hold for these arguments.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// λ is an eigenvalue of the transparent-boundary problem: the Weyl
    /// solution pair is linearly dependent and the resolvent does not exist.
    #[error("not a regular point: |W| = {wronskian_abs:.3e} below threshold {threshold:.3e} at λ = {lambda_re}+{lambda_im}i")]
    NotRegularPoint {
        lambda_re: f64,
        lambda_im: f64,
        wronskian_abs: f64,
        threshold: f64,
    },

    /// Tridiagonal elimination hit a vanishing pivot.
    #[error("singular linear system: pivot {pivot:.3e} at row {row}")]
    SingularSystem { row: usize, pivot: f64 },

    /// A supposedly finite quantity came out NaN/Inf.
    #[error("non-finite result in {0}")]
    NonFinite(String),

    /// One of the evaluators backing a boundary rule failed.
    #[error("evaluator failure: {0}")]
    EvaluatorFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
