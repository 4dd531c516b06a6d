//! Degenerate metrics: radical extraction, submanifold classification,
//! adapted frames and the associated nondegenerate metric `g̃`.

mod associated;
mod form;
mod frame;
mod random;

pub use associated::{associated_metric, AssociatedMetric};
pub use form::{classify, compute_radical, DegenerateForm, SubmanifoldKind};
pub use frame::{build_adapted_frame, frame_from_hint, AdaptedFrame, FrameHint, FrameSource};
pub use random::random_degenerate_gram;

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("Gram matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("Gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("inconsistent dimensions m={m}, n={n}, r={r}")]
    InconsistentDimensions { m: usize, n: usize, r: usize },
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("screen nondegeneracy could not be certified in this arithmetic mode")]
    ScreenNotCertified,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
