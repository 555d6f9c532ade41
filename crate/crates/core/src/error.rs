use alloc::string::String;

use thiserror::Error;

use crate::constitutive::Coordinates;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular input: determinant {det:e} is not safely positive")]
    SingularInput { det: f64 },

    #[error("function undefined at eigenvalue {eigenvalue:e}")]
    Domain { eigenvalue: f64 },

    #[error("energy not finite at {coordinates:?} point {point:?}")]
    EnergyDomain {
        coordinates: Coordinates,
        point: [f64; 3],
    },

    #[error("matrix is not a rotation (orthogonality residual {residual:e}, det {det:e})")]
    NotRotation { residual: f64, det: f64 },

    #[error("stress and basis are not coaxial (relative commutator {relative:e})")]
    NotCoaxial { relative: f64 },

    #[error("model is declared in {found:?} coordinates, expected {expected:?}")]
    CoordinateMismatch {
        expected: Coordinates,
        found: Coordinates,
    },

    #[error("stretch tensor is not positive definite (smallest eigenvalue {smallest:e})")]
    NotPositiveDefinite { smallest: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("unknown model `{name}`")]
    UnknownModel { name: String },
}

pub type Result<T> = core::result::Result<T, Error>;
