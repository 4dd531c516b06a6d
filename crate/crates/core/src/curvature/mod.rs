//! Algebraic curvature tensors, pseudo-Jacobi operators, the Osserman test,
//! Ricci contraction and the Einstein check.

mod jacobi;
mod osserman;
mod random;
mod ricci;
mod tensor;

pub use jacobi::{jacobi_lowered, jacobi_operator, JacobiOperator};
pub use osserman::{
    osserman_test, sample_unit_directions, CausalSign, OssermanReport, OssermanSample, SignSummary, DEFAULT_SAMPLES,
    SAMPLE_BOX,
};
pub use random::{random_algebraic_tensor, random_int_vector, random_symmetric};
pub use ricci::{einstein_check, radical_trace_term, ricci, trace_identity_residual, EinsteinResult};
pub use tensor::{check_curvature_symmetries, CurvatureTensor, SymmetryIdentity, SymmetryStatus};

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::metric::MetricError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("curvature tensor is not a verified algebraic curvature tensor ({0:?})")]
    NotVerified(SymmetryStatus),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty pseudo-sphere: the metric has no {sign} vectors")]
    EmptyPseudoSphere { sign: CausalSign },
    #[error("no {sign} direction found after {attempts} draws")]
    SamplingExhausted { sign: CausalSign, attempts: usize },
    #[error("metric has neither spacelike nor timelike vectors")]
    NoCausalDirections,
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
