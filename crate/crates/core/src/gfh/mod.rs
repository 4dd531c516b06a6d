//! The 2-degenerate Osserman metric `g_(f,h)` with polynomial `f` and `h`,
//! its frames, connection and curvature, checked against the ambient
//! embedding.

pub mod ambient;
mod model;
mod random;

pub use model::{compare_routes, GfhFrames, GfhModel};
pub use random::{random_model, random_point, random_polynomial};

use thiserror::Error;

use crate::curvature::CurvatureError;
use crate::metric::MetricError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfhError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("curvature routes disagree at {indices:?}: closed form {closed_form}, Gauss equation {gauss}")]
    RouteDisagreement { indices: [usize; 4], closed_form: String, gauss: String },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
}
