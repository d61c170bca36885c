use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid order must be positive")]
    DegenerateGrid,
    #[error("evaluation point {x} lies outside [-1, 1]")]
    OutOfDomain { x: f64 },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("derivative order {m} is not available on a grid of order {n}")]
    InvalidDerivativeOrder { m: usize, n: usize },
    #[error("interval [{a}, {b}] is empty")]
    EmptyInterval { a: f64, b: f64 },
    #[error("leading coefficient {a1:e} is below the cubic cutoff {eps_c:e}")]
    NotCubic { a1: f64, eps_c: f64 },
    #[error("root is too close to a multiple root to condition")]
    NearMultipleRoot,
    #[error("roots have not been computed for this cubic")]
    RootsMissing,
    #[error("root or coefficient index out of range")]
    IndexOutOfRange,
    #[error("no bracketing interval found within the iteration budget")]
    BracketNotFound,
    #[error("scalar application requires a row operator")]
    NotARowOperator,
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
}
