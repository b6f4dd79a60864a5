use thiserror::Error;

/// Everything that can go wrong in the toolkit.
///
/// Negative mathematical outcomes (a series that is not algebraic at the
/// requested bounds, a failed certificate) are ordinary return values, not
/// errors. Errors mean the inputs violated a precondition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or invariant-violating input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A truncated series does not carry enough coefficients.
    #[error("insufficient precision: need coefficients up to x^{needed}, have x^{available}")]
    Precision { needed: usize, available: usize },

    /// The seed is not the start of any root of the polynomial.
    #[error("seed is not consistent with a root: order sequence stops increasing at k = {k}")]
    NotARoot { k: usize },

    /// The seed is a root prefix but does not isolate a simple root.
    #[error("not a simple root: {0}")]
    NotSimpleRoot(String),

    /// An enumeration exceeded its configured node budget.
    #[error("enumeration budget of {limit} nodes exceeded")]
    Budget { limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
