//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A phase difference was requested for a field component whose
    /// magnitude is too small to carry a meaningful phase.
    #[error("phase of component {component} is undefined: |E_{component}| = {magnitude:.3e} is below the relative floor")]
    UndefinedPhase { component: char, magnitude: f64 },

    /// A caller-side contract was violated, for example passing a vector
    /// tagged with the wrong basis or a matrix that is not Hermitian.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A numerical evaluation produced a non-finite value.
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
