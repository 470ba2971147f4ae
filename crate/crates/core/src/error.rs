//! Error and result types shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Unified error type.
///
/// The variants mirror the failure surfaces of the pipeline: rejecting
/// parameters, aborting a construction step, refusing an ill-posed root
/// query, and signalling that a certified comparison needs tighter intervals
/// before it can return a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter lies outside its admissible domain (λ exclusions, n too
    /// small, σ ≤ 1, nonpositive tolerance or radius, ...).
    #[error("parameter domain: {0}")]
    ParameterDomain(String),

    /// Malformed textual input (fractions, files, degree lists).
    #[error("parse error: {0}")]
    Parse(String),

    /// An arithmetic operation with no defined result (division by zero).
    #[error("arithmetic: {0}")]
    Arithmetic(String),

    /// Sequence construction aborted at the named degree.
    #[error("construction failed at degree {degree}: {detail}")]
    Construction { degree: usize, detail: String },

    /// A root query is ill-posed (zero polynomial, empty interval, ...).
    #[error("root finding: {0}")]
    RootFinding(String),

    /// An interval endpoint collides with a zero of the polynomial in a way
    /// the sign-variation count cannot absorb; the caller must move it.
    #[error("{endpoint} endpoint {value} hits a zero of the polynomial; perturb the endpoint")]
    BoundaryRoot {
        /// Which endpoint collided: `"lower"` or `"upper"`.
        endpoint: &'static str,
        /// The offending endpoint value, rendered as a fraction.
        value: String,
    },

    /// The polynomial has a repeated real root where simple roots are
    /// required; repeated roots are surfaced, never silently merged.
    #[error("repeated roots: {0}")]
    Multiplicity(String),

    /// Certified root intervals are too coarse to order; refine the root
    /// sets to a tighter tolerance and retry.
    #[error("ordering undecidable at current tolerance: {0}")]
    Undecidable(String),
}

impl Error {
    /// True for errors that indicate bad user-supplied parameters rather
    /// than an internal failure.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::ParameterDomain(_) | Error::Parse(_))
    }
}
