//! Exact tools for Dirichlet-improvability questions along matrix curves:
//! rational arithmetic and lattice reduction, genericity and standard forms
//! of curves, weight-graded representations of `SL(m+n)`, and lattice flows.

pub mod catalog;
pub mod curve;
pub mod exactalg;
pub mod flow;
pub mod group;
pub mod rep;

pub use curve::{CurveError, GenericityReport, MatrixCurve, PencilCandidate, StandardFormResult};
pub use exactalg::{AlgError, IntegerLatticeBasis, Matrix, Poly, RatFunc, Rational};
pub use flow::{FlowError, FlowPoint, TrajectoryRecord};
pub use group::GroupElement;
pub use rep::{LemmaVerdict, RepError, RepVector, WeightGradedRep};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

impl Error {
    pub fn module(&self) -> &'static str {
        match self {
            Error::Alg(_) => "exactalg",
            Error::Curve(_) => "curve",
            Error::Rep(_) => "rep",
            Error::Flow(_) => "flow",
        }
    }

    /// Errors caused by invalid input rather than a failed computation.
    pub fn is_precondition(&self) -> bool {
        match self {
            Error::Alg(e) => !matches!(e, AlgError::DimensionTooLarge(_)),
            Error::Rep(RepError::DimensionBudgetExceeded(_)) => false,
            Error::Flow(FlowError::Alg(AlgError::DimensionTooLarge(_))) => false,
            _ => true,
        }
    }
}
