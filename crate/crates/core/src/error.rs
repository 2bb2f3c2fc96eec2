//! Error type shared by every module of the crate.

/// Errors produced by series evaluation, quadrature and domain checks.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument left the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated series/product hit its term cap before meeting tolerance.
    #[error("term cap {max_terms} exceeded before reaching tolerance {epsilon:e}")]
    MaxTermsExceeded { epsilon: f64, max_terms: usize },

    /// A basic hypergeometric series does not converge for these parameters.
    #[error("divergent series: {0}")]
    DivergentSeries(String),

    /// A q-Pochhammer factor in a denominator vanished while the numerator did not.
    #[error("pole in denominator: {0}")]
    PoleInDenominator(String),

    /// Parameters make the expression singular with no defined limiting value.
    #[error("singular parameters: {0}")]
    SingularParameters(String),

    /// Adaptive quadrature exhausted its refinements without converging.
    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),

    /// A ratio such as w̄/z̄ is undefined because its denominator label is zero.
    #[error("undefined ratio: {0}")]
    RatioUndefined(String),

    /// Malformed configuration or input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
