//! Dense linear algebra over any [`Scalar`](crate::Scalar).

mod charpoly;
mod congruence;
mod elimination;
mod matrix;

pub use charpoly::{char_poly, CharPoly};
pub use congruence::{congruence_diagonalize, congruence_signature, CongruenceDiagonal, Signature};
pub use elimination::{determinant, invert, null_space, rank, rref, solve, Echelon};
pub use matrix::{add_vec, dot, is_zero_vec, scale_vec, sub_vec, unit_vector, vec_approx_eq, Matrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix is singular; kernel vector {witness:?}")]
    Singular { witness: Vec<String> },
    #[error("shape error: {0}")]
    Shape(String),
}
