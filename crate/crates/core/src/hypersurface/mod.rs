//! Lightlike hypersurfaces of constant-curvature spaces at a point: induced
//! curvature and Ricci form, the symmetry checkers and their cross-checks.

mod checks;
mod point;
mod random;

pub use checks::{
    induced_curvature, local_symmetry_obstruction, local_symmetry_scan, osserman_constraint_residual,
    ricci_asymmetry, ricci_h, ricci_semi_symmetry_residual, ricci_semi_symmetry_scan, screen_conformal_check,
    semi_symmetry_closed_form, semi_symmetry_residual, semi_symmetry_scan, symmetry_report, Check, Implication,
    ScreenConformal, SemiSymmetryScan, SymmetryReport, Witness,
};
pub use point::HypersurfacePoint;
pub use random::{
    random_einstein, random_hypersurface, random_osserman_constrained, random_screen_gram, random_umbilical,
};

use thiserror::Error;

use crate::linalg::{LinalgError, Matrix};
use crate::metric::MetricError;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypersurfaceError {
    #[error("invalid hypersurface data: {0}")]
    InvalidData(String),
    #[error("semi-symmetry routes disagree at {tuple}: derivation action {four_term}, closed form {closed_form}")]
    RouteDisagreement { tuple: String, four_term: String, closed_form: String },
    #[error("implication violated: {0}")]
    ImplicationViolated(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Data with `B = ρ g` and `A_N = λ P` over the given screen Gram matrix.
pub fn build_umbilical<T: Scalar>(
    m: usize,
    c: T,
    rho: T,
    lambda: T,
    screen_gram: &Matrix<T>,
) -> Result<HypersurfacePoint<T>, HypersurfaceError> {
    if (screen_gram.rows(), screen_gram.cols()) != (m, m) {
        return Err(HypersurfaceError::InvalidData(format!("screen Gram matrix must be {m}x{m}")));
    }
    let n = m + 1;
    let g = Matrix::from_fn(n, n, |i, j| if i == 0 || j == 0 { T::zero() } else { screen_gram[(i - 1, j - 1)].clone() });
    let a = Matrix::from_fn(n, n, |i, j| if i == j && i > 0 { lambda.clone() } else { T::zero() });
    HypersurfacePoint::new(c, screen_gram, g.scale(&rho), a)
}
