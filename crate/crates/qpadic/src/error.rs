use thiserror::Error;

/// Error type shared by every kernel module.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation was called outside its mathematical domain
    /// (e.g. dividing by a non-regular element, k > s in a q-binomial).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two values that must live in the same algebra do not
    /// (mismatched radii, mismatched variants, wrong dialect).
    #[error("structural error: {0}")]
    Structure(String),

    /// A configuration is rejected at construction time
    /// (bad prime, |1-q| not small, radius hypothesis violated).
    #[error("configuration error: {0}")]
    Config(String),

    /// An iterative algorithm cannot reach the requested precision.
    #[error("non-convergence: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
