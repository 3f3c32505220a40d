use thiserror::Error;

use crate::chain_maps::Point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {point} is outside the chain 1..={n}")]
    OutOfRange { point: Point, n: Point },

    #[error("point {0} appears more than once in the domain")]
    NotFunctional(Point),

    #[error("point {0} appears more than once in the image")]
    NotInjective(Point),

    #[error("maps live on different chains ({left} vs {right})")]
    MismatchedChain { left: Point, right: Point },

    #[error("n = {n} exceeds the {what} limit of {cap}")]
    LimitExceeded { what: &'static str, n: Point, cap: Point },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("element set is not closed: product of elements {left} and {right} is missing")]
    NotClosed { left: usize, right: usize },

    #[error("table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    #[error("semigroup has no zero element")]
    NoZero,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
