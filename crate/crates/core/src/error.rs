use thiserror::Error;

use crate::algebra::Element;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}; expected an integer \"p\" or a fraction \"p/q\"")]
    ParseScalar(String),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("structure constant index ({i}, {j}, {k}) out of range for dimension {dim}")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        k: usize,
        dim: usize,
    },
    #[error("duplicate structure constant entry ({i}, {j}, {k})")]
    DuplicateEntry { i: usize, j: usize, k: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis is empty")]
    EmptyBasis,
    #[error("basis elements are linearly dependent (rank {rank} < {len})")]
    DependentBasis { rank: usize, len: usize },
    #[error(
        "span is not closed under the product: b{i}*b{j} leaves the span (residual {residual})"
    )]
    NotClosed {
        i: usize,
        j: usize,
        residual: Element,
    },
    #[error("u*b{index} leaves the span of the subalgebra (residual {residual})")]
    ImageEscapes { index: usize, residual: Element },
    #[error("construction {0} requires an operator")]
    MissingOperator(&'static str),
    #[error("construction {name} requires parameter {param}")]
    MissingParameter {
        name: &'static str,
        param: &'static str,
    },
    #[error("unknown construction {0:?}")]
    UnknownConstruction(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("malformed operator property {0:?}")]
    MalformedProperty(String),
    #[error("unknown constraint {0:?}")]
    UnknownConstraint(String),
    #[error("grid for parameter {param} has {points} distinct values; degree {degree} needs at least {needed}")]
    GridTooSmall {
        param: String,
        points: usize,
        degree: u32,
        needed: usize,
    },
    #[error("grid for parameter {param} contains the excluded value 0")]
    GridHitsExcluded { param: String },
    #[error("grid point has {found} coordinates, expected {expected}")]
    GridArity { expected: usize, found: usize },
    #[error("search strategy precondition failed: {0}")]
    Strategy(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("invalid file: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
