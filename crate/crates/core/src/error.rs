//! Pointwise failures of the geometric pipeline.

use crate::linalg::SingularFrame;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("frame [f_x, f_y, f_z, C] is singular (condition estimate {cond:e}): not an immersion or C not transversal")]
    SingularFrame { cond: f64 },
    #[error("transversal field is not J-tangent (defect {defect:e})")]
    NotJTangent { defect: f64 },
    #[error("distribution D is not two-dimensional: {reason}")]
    DegenerateD { reason: &'static str },
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("vector is not in D (eta(Z) = {eta_z:e})")]
    ZNotInD { eta_z: f64 },
}

impl From<SingularFrame> for GeometryError {
    fn from(e: SingularFrame) -> Self {
        GeometryError::SingularFrame { cond: e.cond }
    }
}
