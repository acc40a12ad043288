use thiserror::Error;

use crate::forms::SimplexPoint;
use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("exponent vector has total degree {found}, form has degree {expected}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("a form needs at least one variable")]
    NoVariables,

    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    /// Indices are 1-based.
    #[error("matrix is not symmetric: entry ({i}, {j}) differs from ({j}, {i})")]
    Asymmetric { i: usize, j: usize },

    #[error("not a point of the standard simplex: {0}")]
    NotOnSimplex(String),

    #[error("face enumeration supports at most {max} variables, got {n}")]
    TooManyVariables { n: usize, max: usize },

    #[error("form is not positive on the simplex: f{point} = {value}")]
    NotPositive { point: SimplexPoint, value: Rational },

    #[error("t·(m+2) is not an integer vector for m = {m}")]
    NonIntegralLattice { m: u32 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}
