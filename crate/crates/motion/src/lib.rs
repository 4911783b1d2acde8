//! Differential camera motion and the image-curve relations it induces.
//!
//! Everything is evaluated at a reference instant `t = 0` at which the camera
//! frame is the world frame (`R(0) = I`, `c(0) = 0`), unless a function takes
//! an explicit pose. Image normals follow `n = t × e₃`, so for the normal
//! velocity `β = γ_t·n` the rigid-curve relation reads
//! `ρ[β + Ω·γ×(γ×t)] = −V·(γ×t)`.

mod curve;
mod kinematics;
mod l1;
mod occluding;
mod point;

pub use curve::{
    alpha_from_beta, curve_velocity_frenet, frenet_epipolar_residual, gamma_st, gamma_tt_frenet, tangent_rate,
};
pub use kinematics::{angular_velocity, point_velocity_camera, taylor_pose, CameraMotion, TaylorPose};
pub use l1::{l1_residual, L1Input, L1Residual};
pub use occluding::{contour_generator_velocity, occluding_flow, occluding_gamma_tt};
pub use point::{
    differential_epipolar_residual, fixed_point_flow, flow_decomposition, image_acceleration, image_velocity,
    CurveKind, CurveMotionState,
};

pub type Result<T> = std::result::Result<T, mvg_core::GeomError>;
