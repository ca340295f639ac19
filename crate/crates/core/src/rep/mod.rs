//! Exterior powers of the adjoint representation of `SL(m+n)`, graded by torus
//! weights, and exact verifiers for the linear-dynamical lemmas on them.

mod lemmas;
mod lie;
mod sl2;
mod wedge;

pub use lemmas::{
    admissible, check_zero_weight_invariance, e_vector, find_witness, project_chain, AdmissibleQuery, FLOW_TORUS,
};
pub use lie::{sl2_triple, BasisElement, LieElement, Sl2Triple, SlBasis, Torus};
pub use sl2::{check_corollary, verify_max_inequality, IdentityCheck, LemmaVerdict, Restricted, Sl2Module};
pub use wedge::{
    build_rep, GradedModule, RepVector, Sl2Irrep, WeightGradedRep, FULL_SUM_LIMIT, SINGLE_DEGREE_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("rep: X is singular")]
    SingularX,
    #[error("rep: dimension budget exceeded: {0}")]
    DimensionBudgetExceeded(String),
    #[error("rep: invalid wedge degree: {0}")]
    InvalidDegree(String),
    #[error("rep: shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("rep: the zero vector has no maximal weight")]
    ZeroVector,
    #[error("rep: r must be nonzero")]
    ZeroR,
    #[error("rep: precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("rep: representation carries no block-torus grading (needs m | n)")]
    GradingMissing,
}
