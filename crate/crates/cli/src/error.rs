use thiserror::Error;

use lightlike_core::curvature::CurvatureError;
use lightlike_core::gfh::GfhError;
use lightlike_core::hypersurface::HypersurfaceError;
use lightlike_core::linalg::LinalgError;
use lightlike_core::metric::MetricError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("route disagreement: {0}")]
    RouteDisagreement(String),
    #[error("acceptance failure: {0}")]
    Acceptance(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 success, 1 input error, 2 route disagreement, 3 acceptance failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) | Self::Io(_) => 1,
            Self::RouteDisagreement(_) => 2,
            Self::Acceptance(_) => 3,
        }
    }
}

impl From<GfhError> for CliError {
    fn from(e: GfhError) -> Self {
        match e {
            GfhError::RouteDisagreement { .. } => Self::RouteDisagreement(e.to_string()),
            other => Self::Input(other.to_string()),
        }
    }
}

impl From<HypersurfaceError> for CliError {
    fn from(e: HypersurfaceError) -> Self {
        match e {
            HypersurfaceError::RouteDisagreement { .. } => Self::RouteDisagreement(e.to_string()),
            HypersurfaceError::ImplicationViolated(_) => Self::Acceptance(e.to_string()),
            other => Self::Input(other.to_string()),
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self::Input(e.to_string())
            }
        }
    )*};
}

input_error!(CurvatureError, MetricError, LinalgError);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let route = GfhError::RouteDisagreement { indices: [0, 1, 0, 1], closed_form: "1".into(), gauss: "2".into() };
        assert_eq!(CliError::from(route).exit_code(), 2);
        let tuple = HypersurfaceError::RouteDisagreement { tuple: "[0]".into(), four_term: "1".into(), closed_form: "0".into() };
        assert_eq!(CliError::from(tuple).exit_code(), 2);
        assert_eq!(CliError::from(HypersurfaceError::ImplicationViolated("x".into())).exit_code(), 3);
        assert_eq!(CliError::from(HypersurfaceError::InvalidData("x".into())).exit_code(), 1);
        assert_eq!(CliError::from(GfhError::InvalidModel("x".into())).exit_code(), 1);
        let io = std::io::Error::new(std::io::ErrorKind::NotFound, "gone");
        assert_eq!(CliError::from(io).exit_code(), 1);
    }
}
