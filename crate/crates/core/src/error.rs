use crate::Vec3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("curve is not regular: speed {speed:e} at or below threshold")]
    NonRegular { speed: f64 },
    /// Carries the first-order data, which is still well defined.
    #[error("curvature {curvature:e} at or below threshold; normal undefined")]
    ZeroCurvature { curvature: f64, speed: f64, tangent: Vec3 },
    #[error("point at depth {depth:e} is behind the camera")]
    BehindCamera { depth: f64 },
    #[error("intrinsic matrix is singular or has non-positive focal lengths")]
    SingularIntrinsics,
    #[error("matrix is not a rotation (orthogonality residual {residual:e}, det {det})")]
    NotARotation { residual: f64, det: f64 },
    #[error("image-plane input has non-zero third component {z:e}")]
    NotInImagePlane { z: f64 },
    #[error("space tangent is aligned with the visual ray")]
    TangentAlongRay,
    #[error("image speed {speed:e} vanishes; image point is stationary")]
    StationaryImagePoint { speed: f64 },
    #[error("rays are not coplanar (normalized residual {residual:e})")]
    NonCoplanarRays { residual: f64 },
    #[error("rays are parallel")]
    ParallelRays,
    #[error("triangulated depth {depth:e} is not positive")]
    NegativeDepth { depth: f64 },
    #[error("tangent lies in the epipolar plane")]
    EpipolarTangency,
    #[error("the two views disagree on the tangent orientation")]
    InconsistentSign,
    #[error("linear system is ill conditioned (condition estimate {cond:e})")]
    IllConditionedSystem { cond: f64 },
    #[error("matrix is not skew-symmetric (symmetric residual {residual:e})")]
    NonSkew { residual: f64 },
    #[error("epipolar line is tangent to the curve")]
    EpipolarDegenerate,
    #[error("normal curvature {kt:e} vanishes")]
    FlatSurfacePoint { kt: f64 },
    #[error("operation is not valid for non-rigid curve motion")]
    NonRigidState,
}
