use mvg_core::{GeomError, Vec3};

use crate::{CameraMotion, CurveKind, Result};

/// Measurements at one image point for the generalized L1 relation.
///
/// `gamma_t` and `t_t` are time derivatives at fixed curve parameter, the
/// same correspondence along which `beta_t` was measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Input {
    pub gamma: Vec3,
    pub t: Vec3,
    pub gamma_t: Vec3,
    pub t_t: Vec3,
    pub rho: f64,
    pub beta: f64,
    pub beta_t: f64,
    /// `e₃·Γʷ_t`; zero for fixed curves.
    pub e3_dot_gw_t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Residual {
    pub raw: f64,
    /// `raw / ((‖V‖ + ‖Ω‖ρ)(|β| + ‖Ω‖)² + ε)`.
    pub normalized: f64,
}

/// Generalized L1 residual for fixed curves and occluding contours.
///
/// With `B̃ = β + Ω·γ×(γ×t)` and `n = t × e₃` it reads
/// `V_z B̃² − (V·γ×t)(β_t + Ω_t·γ×(γ×t) + Ω·[γ×(γ×t)]_t)
///  + [V_t·γ×t + V·(γ×t)_t] B̃ − (V·γ×t)(e₃·Ω×γ) B̃ + (e₃·Γʷ_t) B̃² − (Ω×V)·(γ×t) B̃`.
/// `missing_term = false` drops the last product, as in the older rigid form.
pub fn l1_residual(input: &L1Input, motion: &CameraMotion, kind: &CurveKind, missing_term: bool) -> Result<L1Residual> {
    if *kind == CurveKind::Nonrigid {
        return Err(GeomError::NonRigidState);
    }
    let CameraMotion {
        omega: w,
        omega_t: w_t,
        v,
        v_t,
    } = *motion;
    let (g, t) = (input.gamma, input.t);
    let gt = g.cross(&t);
    let ggt = g.cross(&gt);
    let gt_t = input.gamma_t.cross(&t) + g.cross(&input.t_t);
    let ggt_t = input.gamma_t.cross(&gt) + g.cross(&gt_t);
    let bb = input.beta + w.dot(&ggt);
    let bb_t = input.beta_t + w_t.dot(&ggt) + w.dot(&ggt_t);
    let vgt = v.dot(&gt);
    let mut raw = v.z * bb * bb - vgt * bb_t + (v_t.dot(&gt) + v.dot(&gt_t)) * bb - vgt * w.cross(&g).z * bb
        + input.e3_dot_gw_t * bb * bb;
    if missing_term {
        raw -= w.cross(&v).dot(&gt) * bb;
    }
    let scale = (v.norm() + w.norm() * input.rho) * (input.beta.abs() + w.norm()).powi(2) + f64::MIN_POSITIVE;
    Ok(L1Residual {
        raw,
        normalized: raw / scale,
    })
}
