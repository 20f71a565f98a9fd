//! Crate-wide error type.

use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation that needs at least one entry got an empty sequence.
    #[error("sequence is empty")]
    EmptySequence,

    /// A sequence entry (or parameter) was NaN or infinite.
    #[error("non-finite value {value} at position {index}")]
    NonFinite { index: usize, value: f64 },

    /// A stored decay claim (k, C_k) is violated by an entry.
    #[error("decay claim (k={k}, C={c}) violated at n={n}: |x_n| n^k = {observed}")]
    ClaimViolated { k: u32, c: f64, n: usize, observed: f64 },

    /// Envelope parameters out of range (amplitude < 0 or rate <= 0).
    #[error("invalid envelope parameters: amplitude={amplitude}, rate={rate}")]
    InvalidEnvelope { amplitude: f64, rate: f64 },

    /// Mode index outside the stored range.
    #[error("mode index {index} out of range 1..={modes}")]
    IndexOutOfRange { index: usize, modes: usize },

    /// Scalar term has no interior minimum (derivative never changes sign).
    #[error("term {mode} has no interior minimum: |tilt/scale| = {ratio} >= {bound}")]
    NoInteriorMinimum { mode: usize, ratio: f64, bound: f64 },

    /// Bracket expansion hit the search limit without a sign change.
    #[error("no sign change within |t| <= {limit:e} while bracketing from {start}")]
    BracketExpansionExceeded { start: f64, limit: f64 },

    /// The iteration cap was reached before the residual tolerance.
    #[error("residual {residual:e} above tolerance {tol:e} after {iterations} iterations")]
    ToleranceNotReached { residual: f64, tol: f64, iterations: usize },

    /// Argument length does not match the functional's mode count.
    #[error("argument has {got} modes but the functional stores {expected}")]
    ModeMismatch { got: usize, expected: usize },

    /// Builder inputs of inconsistent lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Tail bound did not converge within the term budget.
    #[error("tail bound still {last_term:e} per term after {terms} terms")]
    EnvelopeTooSlow { terms: usize, last_term: f64 },

    /// A per-mode scalar solve failed inside the minimizer.
    #[error("mode {mode} solve failed: {source}")]
    ModeSolveFailed {
        mode: usize,
        #[source]
        source: Box<Error>,
    },

    /// Re-verification of a solve report found a discrepancy.
    #[error("certification failed: {detail}")]
    CertificationFailed { detail: String },

    /// Adaptive truncation growth hit its mode cap.
    #[error("tail target {target:e} not reached at {max_modes} modes")]
    AdaptiveTruncationExceeded { target: f64, max_modes: usize },

    /// Quadrature did not stabilize under node doubling.
    #[error("quadrature drift {drift:e} above {tol:e} at {nodes} nodes")]
    QuadratureNotConverged { nodes: usize, drift: f64, tol: f64 },

    /// Evaluation point outside the basis domain.
    #[error("point {point} outside the domain [{lo}, {hi}]")]
    PointOutOfDomain { point: f64, lo: f64, hi: f64 },

    /// Problem data fails the rapid-decay check.
    #[error("data sequence `{name}` fails the decay check at k={k}")]
    DataNotRapidlyDecreasing { name: String, k: u32 },

    /// Arctan-family data violates the sup |c_n/nu_n| < pi/2 requirement.
    #[error("sup |c_n/nu_n| = {observed} >= pi/2 at mode {mode}")]
    ArctanBoundViolated { mode: usize, observed: f64 },

    /// Fewer points than a diagnostic needs.
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },

    /// Malformed input file or spec.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
