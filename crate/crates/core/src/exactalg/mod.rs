//! Exact arithmetic: rationals, polynomials, rational functions, dense matrices and
//! integer lattices with LLL and sup-norm shortest-vector search.

pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use lattice::{IntegerLatticeBasis, ShortestVector, SvpStats};
pub use matrix::{Matrix, Scalar};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{format_rational, int, parse_rational, rat, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("exactalg: matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("exactalg: matrix is singular (determinant is identically zero)")]
    Singular,
    #[error("exactalg: shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("exactalg: lattice basis columns are linearly dependent")]
    DependentColumns,
    #[error("exactalg: lattice dimension {0} exceeds the enumeration bound of 8")]
    DimensionTooLarge(usize),
    #[error("exactalg: LLL parameter delta must satisfy 1/4 < delta < 1, got {0}")]
    InvalidDelta(String),
    #[error("exactalg: parse error: {0}")]
    Parse(String),
}
