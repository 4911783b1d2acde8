use mvg_core::{Frenet2, GeomError, Mat3, Tolerances, Vec3};

use crate::{image_velocity, CameraMotion, CurveKind, CurveMotionState, Result};

/// Tangential and normal image velocities `(α, β)`, `γ_t = αt + βn`.
///
/// With `W = V − Ω̂T + RΓʷ_t`:
/// `α = Ω·γ×(γ×n) + (W/ρ)·γ×n` and `β = −Ω·γ×(γ×t) − (W/ρ)·γ×t`.
/// At the reference instant pass `R = I`, `T = 0`.
pub fn curve_velocity_frenet(
    state: &CurveMotionState,
    frame2: &Frenet2,
    motion: &CameraMotion,
    r: &Mat3,
    transl: &Vec3,
) -> (f64, f64) {
    let (g, rho) = (state.gamma(), state.rho());
    let (t, n) = (frame2.t, frame2.n);
    let w = (motion.v - motion.omega.cross(transl) + r * state.gw_t) / rho;
    let gn = g.cross(&n);
    let gt = g.cross(&t);
    let alpha = motion.omega.dot(&g.cross(&gn)) + w.dot(&gn);
    let beta = -motion.omega.dot(&g.cross(&gt)) - w.dot(&gt);
    debug_assert!(
        *r != Mat3::identity() || *transl != Vec3::zeros() || {
            let (gamma_t, _) = image_velocity(state, motion);
            let scale = gamma_t.norm().max(1.0);
            (gamma_t - t * alpha - n * beta).norm() <= 1e-9 * scale
        },
        "Frenet velocities disagree with the image velocity"
    );
    (alpha, beta)
}

/// Tangential velocity of a rigid curve from its normal velocity:
/// `α = −[β + Ω·γ×(γ×t)] V·(γ×n)/V·(γ×t) + Ω·γ×(γ×n)`.
pub fn alpha_from_beta(
    beta: f64,
    gamma: &Vec3,
    t: &Vec3,
    n: &Vec3,
    motion: &CameraMotion,
    tol: &Tolerances,
) -> Result<f64> {
    let gt = gamma.cross(t);
    let gn = gamma.cross(n);
    let den = motion.v.dot(&gt);
    if den.abs() <= tol.epi * motion.v.norm() * gt.norm() || den == 0.0 {
        return Err(GeomError::EpipolarDegenerate);
    }
    let w = &motion.omega;
    Ok(-(beta + w.dot(&gamma.cross(&gt))) * motion.v.dot(&gn) / den + w.dot(&gamma.cross(&gn)))
}

/// `(γ×t)·V [α − Ω·γ×(γ×n)] + (γ×n)·V [β + Ω·γ×(γ×t)]`. Vanishes
/// identically for pure rotation.
pub fn frenet_epipolar_residual(alpha: f64, beta: f64, gamma: &Vec3, t: &Vec3, n: &Vec3, motion: &CameraMotion) -> f64 {
    let gt = gamma.cross(t);
    let gn = gamma.cross(n);
    let w = &motion.omega;
    gt.dot(&motion.v) * (alpha - w.dot(&gamma.cross(&gn))) + gn.dot(&motion.v) * (beta + w.dot(&gamma.cross(&gt)))
}

/// Spatial derivative of the image velocity, `γ_st`.
///
/// Fixed curves and occluding contours share one formula. Nonrigid states
/// need `Γʷ_st`.
pub fn gamma_st(
    state: &CurveMotionState,
    gamma_s: &Vec3,
    rho_s: f64,
    motion: &CameraMotion,
    gw_st: Option<Vec3>,
) -> Result<Vec3> {
    let (g, rho) = (state.gamma(), state.rho());
    let (v, w) = (motion.v, motion.omega);
    let wgs = w.cross(gamma_s);
    let mut out =
        (g * v.z - v) * (rho_s / (rho * rho)) - gamma_s * (v.z / rho) + wgs - g * wgs.z - gamma_s * w.cross(&g).z;
    if state.kind == CurveKind::Nonrigid {
        let gw_st = gw_st.ok_or(GeomError::NonRigidState)?;
        let gw = state.gw_t;
        out += (gw_st - g * gw_st.z - gamma_s * gw.z) / rho - (gw - g * gw.z) * (rho_s / (rho * rho));
    }
    Ok(Vec3::new(out.x, out.y, 0.0))
}

/// Time derivative of the unit tangent at fixed `s`: `t_t = (n·γ_st/g) n`
/// with `g = ‖γ_s‖`.
pub fn tangent_rate(gamma_st: &Vec3, frame2: &Frenet2, g: f64) -> Vec3 {
    frame2.n * (frame2.n.dot(gamma_st) / g)
}

/// `(t·γ_tt, n·γ_tt)` from the Frenet velocities.
pub fn gamma_tt_frenet(
    state: &CurveMotionState,
    frame2: &Frenet2,
    motion: &CameraMotion,
    alpha: f64,
    beta: f64,
) -> (f64, f64) {
    let (g, rho) = (state.gamma(), state.rho());
    let m = motion.rotational_acceleration() * g;
    let rest = motion.omega.cross(&state.gw_t) * 2.0 + state.gw_tt + motion.v_t;
    let base = m + rest / rho;
    let rate = motion.omega.cross(&g).z + (motion.v.z + state.gw_t.z) / rho;
    let accel = m.z + rest.z / rho;
    let (t, n) = (frame2.t, frame2.n);
    (
        t.dot(&base) - 2.0 * rate * alpha - accel * t.dot(&g),
        n.dot(&base) - 2.0 * rate * beta - accel * n.dot(&g),
    )
}
