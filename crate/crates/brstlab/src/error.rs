//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type. All arithmetic is exact, so every error is a
/// structural problem (mismatched truncation orders, violated preconditions),
/// never a numerical tolerance issue.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Mismatched truncation orders, incompatible phase spaces, or an
    /// operation applied to values from different contexts.
    #[error("configuration error: {0}")]
    Config(String),

    /// A series whose leading coefficient is not invertible was inverted.
    #[error("inversion error: {0}")]
    Inversion(String),

    /// Division by the formal parameter with a nonzero constant term. This
    /// signals a violated super-commutativity precondition upstream.
    #[error("division error: {0}")]
    Division(String),

    /// A cohomological operation received an input that is not closed; the
    /// message carries the residual.
    #[error("closedness error: residual {0}")]
    Closedness(String),

    /// A reduced-product operation received a non-invariant input.
    #[error("invariance error: {0}")]
    Invariance(String),

    /// Expression or word syntax error in CLI input.
    #[error("parse error: {0}")]
    Parse(String),

    /// A Neumann iteration failed to terminate within its filtration bound.
    /// This would indicate a broken nilpotency/filtration assumption and is
    /// surfaced rather than silently extended.
    #[error("non-terminating inversion: {0}")]
    NonTerminating(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
