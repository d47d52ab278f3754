use thiserror::Error;

/// Errors raised by the invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),

    #[error("invalid basket entry (b={b}, r={r}): {reason}")]
    InvalidBasketEntry { b: u64, r: u64, reason: &'static str },

    #[error("could not parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("canonical volume must be positive, got {0}")]
    NonPositiveVolume(String),

    #[error("expected a {expected}-dimensional ambient, got {found} weights")]
    AmbientDimension { expected: usize, found: usize },

    #[error("Hilbert series coefficient c_{degree} = {value} is negative")]
    NegativeCoefficient { degree: usize, value: String },

    #[error("chi(mK) at m={m} is {value}, not a nonnegative integer")]
    NonIntegralPlurigenus { m: u32, value: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bound not applicable: {0}")]
    HypothesisFailed(String),

    #[error("invalid constraint {input:?}: {reason}")]
    Constraint { input: String, reason: String },

    #[error("catalog error: {0}")]
    Catalog(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
