//! Pointwise tensor algebra for degenerate (lightlike) metrics.

pub mod curvature;
pub mod gfh;
pub mod hypersurface;
pub mod linalg;
pub mod metric;
pub mod poly;
pub mod scalar;

pub use poly::{Polynomial, RationalPolynomial};
pub use scalar::{Rational, Scalar};

/// Matrices, tensors and models over exact rationals.
pub type ExactMatrix = linalg::Matrix<Rational>;
pub type ExactCurvature = curvature::CurvatureTensor<Rational>;
pub type ExactGfh = gfh::GfhModel<Rational>;
pub type ExactHypersurface = hypersurface::HypersurfacePoint<Rational>;

/// The same objects in `f64` float mode.
pub type FloatMatrix = linalg::Matrix<f64>;
pub type FloatCurvature = curvature::CurvatureTensor<f64>;
pub type FloatGfh = gfh::GfhModel<f64>;
pub type FloatHypersurface = hypersurface::HypersurfacePoint<f64>;
