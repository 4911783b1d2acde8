use mvg_core::{GeomError, Tolerances, Vec3};

use crate::{fixed_point_flow, CameraMotion, CurveKind, CurveMotionState, Result};

/// Velocity of the contour generator under epipolar parametrization,
/// `Γʷ_t = (1/Kᵗ) (V/ρ · (γ×t)/‖γ×t‖) γ/‖γ‖²`.
///
/// `kt` is measured against the normal `(γ×t)/‖γ×t‖`; it is positive on a
/// convex object when `t` runs so that this normal points into the object.
pub fn contour_generator_velocity(
    gamma: &Vec3,
    rho: f64,
    v: &Vec3,
    t: &Vec3,
    kt: f64,
    tol: &Tolerances,
) -> Result<Vec3> {
    if kt.abs() <= tol.curvature {
        return Err(GeomError::FlatSurfacePoint { kt });
    }
    let gt = gamma.cross(t);
    let along = v.dot(&gt) / (rho * gt.norm());
    Ok(gamma * (along / (kt * gamma.norm_squared())))
}

/// Apparent-contour flow. World motion of the generator is along the ray,
/// so this is exactly the fixed-point flow.
pub fn occluding_flow(gamma: &Vec3, rho: f64, motion: &CameraMotion) -> Vec3 {
    fixed_point_flow(gamma, rho, motion)
}

/// Image acceleration of an apparent contour. `Γʷ_tt` is not needed.
///
/// `gamma_t` and `rho_t` must be the true image velocity and depth rate; in
/// particular `ρ_t` includes `e₃·Γʷ_t` (see [`crate::image_velocity`]).
pub fn occluding_gamma_tt(state: &CurveMotionState, motion: &CameraMotion, gamma_t: &Vec3, rho_t: f64) -> Result<Vec3> {
    if !matches!(state.kind, CurveKind::Occluding { .. }) {
        return Err(GeomError::NonRigidState);
    }
    state.validate()?;
    let (g, rho) = (state.gamma(), state.rho());
    let w = &motion.omega;
    let m = motion.rotational_acceleration() * g;
    let gw = state.gw_t;
    let mu = gw.z;
    let wg = w.cross(&g);
    let out = m - g * m.z + w.cross(&gw) * (2.0 / rho) + motion.v_t / rho - gamma_t * (2.0 * rho_t / rho)
        + gamma_t * (mu / rho)
        - wg * (mu / rho)
        - g * (motion.v_t.z / rho)
        - g * (2.0 * w.cross(&gw).z / rho)
        + g * (mu * wg.z / rho);
    Ok(Vec3::new(out.x, out.y, 0.0))
}
