use thiserror::Error;

/// Errors raised by the library.
///
/// Undefined results (a pair outside the domain of `r`, a reversing diagram
/// that cannot be closed) are values, not errors; this type covers invalid
/// inputs and refused operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a window is required when the carrier is countable")]
    MissingWindow,

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("sigma_{x} is not injective: two points map to {value}")]
    NonInjectiveSigma { x: u64, value: u64 },

    #[error("gamma_{y} is not injective: two points map to {value}")]
    NonInjectiveGamma { y: u64, value: u64 },

    #[error("map is not injective: two points map to {0}")]
    NonInjective(u64),

    #[error("index {index} lies outside the carrier of size {size}")]
    OutOfCarrier { index: u64, size: u64 },

    #[error("unknown example `{0}` (known: etingof4, squarefree3, trivial3, thompson)")]
    UnknownExample(String),

    #[error("{x} is not in the range of sigma_{x}")]
    XNotInRange { x: u64 },

    #[error("the solution is not square-free, non-degenerate, involutive and braided ({0})")]
    NotSquareFree(String),

    #[error("malformed trace at step {step}: {message}")]
    MalformedTrace { step: usize, message: String },

    #[error("retraction is not well defined: {0}")]
    QuotientNotWellDefined(String),

    #[error("retraction is not a partial solution: {0}")]
    QuotientNotSolution(String),

    #[error("input of size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("operation requires a finite carrier")]
    NotFinite,

    #[error("cannot parse `{token}`: {message}")]
    Parse { token: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
