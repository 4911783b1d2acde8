use mvg_core::{GeomError, ImagePoint, Mat3, Vec3};

use crate::{CameraMotion, Result};

/// How the space point behind an image sample moves in the world.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    Fixed,
    /// Contour generator under epipolar parametrization; `kt` is the normal
    /// curvature of the surface along the ray, taken with respect to the
    /// normal `(γ×t)/‖γ×t‖`.
    Occluding {
        kt: f64,
    },
    Nonrigid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveMotionState {
    pub point: ImagePoint,
    pub gw_t: Vec3,
    pub gw_tt: Vec3,
    pub kind: CurveKind,
}

impl CurveMotionState {
    pub fn fixed(point: ImagePoint) -> CurveMotionState {
        CurveMotionState {
            point,
            gw_t: Vec3::zeros(),
            gw_tt: Vec3::zeros(),
            kind: CurveKind::Fixed,
        }
    }

    /// `gw_t` must lie along the ray. `gw_tt` is not needed by the
    /// occluding-contour relations and may be left at zero.
    pub fn occluding(point: ImagePoint, kt: f64, gw_t: Vec3, gw_tt: Vec3) -> Result<CurveMotionState> {
        let s = CurveMotionState {
            point,
            gw_t,
            gw_tt,
            kind: CurveKind::Occluding { kt },
        };
        s.validate()?;
        Ok(s)
    }

    pub fn nonrigid(point: ImagePoint, gw_t: Vec3, gw_tt: Vec3) -> CurveMotionState {
        CurveMotionState {
            point,
            gw_t,
            gw_tt,
            kind: CurveKind::Nonrigid,
        }
    }

    pub fn gamma(&self) -> Vec3 {
        self.point.gamma
    }

    pub fn rho(&self) -> f64 {
        self.point.rho
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            CurveKind::Fixed if self.gw_t != Vec3::zeros() || self.gw_tt != Vec3::zeros() => {
                Err(GeomError::NonRigidState)
            }
            CurveKind::Occluding { .. } => {
                let g = self.gamma();
                let off = self.gw_t.cross(&g).norm();
                if off > 1e-10 * (self.gw_t.norm() * g.norm()).max(1.0) {
                    Err(GeomError::NonRigidState)
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

fn flat(v: Vec3) -> Vec3 {
    Vec3::new(v.x, v.y, 0.0)
}

/// `γ_t = Ω×γ − (e₃·Ω×γ)γ + V/ρ − (V_z/ρ)γ`.
pub fn fixed_point_flow(gamma: &Vec3, rho: f64, motion: &CameraMotion) -> Vec3 {
    let wg = motion.omega.cross(gamma);
    let v = motion.v / rho;
    flat(wg - gamma * wg.z + v - gamma * v.z)
}

/// `(γ_t, ρ_t)` at the reference instant.
pub fn image_velocity(state: &CurveMotionState, motion: &CameraMotion) -> (Vec3, f64) {
    let (g, rho) = (state.gamma(), state.rho());
    let mut gamma_t = fixed_point_flow(&g, rho, motion);
    let gw = state.gw_t;
    if gw != Vec3::zeros() {
        gamma_t += flat((gw - g * gw.z) / rho);
    }
    let rho_t = rho * motion.omega.cross(&g).z + gw.z + motion.v.z;
    (gamma_t, rho_t)
}

/// `(γ_tt, ρ_tt)` at the reference instant.
pub fn image_acceleration(state: &CurveMotionState, motion: &CameraMotion) -> (Vec3, f64) {
    let (g, rho) = (state.gamma(), state.rho());
    let (gamma_t, rho_t) = image_velocity(state, motion);
    let m = motion.rotational_acceleration() * g;
    let w_gw = motion.omega.cross(&state.gw_t);
    let rest = w_gw * 2.0 + state.gw_tt + motion.v_t;
    let rho_tt = rho * m.z + rest.z;
    let gamma_tt = m + (rest - gamma_t * (2.0 * rho_t) - g * rho_tt) / rho;
    (flat(gamma_tt), rho_tt)
}

/// `A(γ)` and `B(γ)` with `γ_t = A V/ρ + B Ω` for a fixed point.
pub fn flow_decomposition(gamma: &ImagePoint) -> (Mat3, Mat3) {
    let (x, y) = (gamma.gamma.x, gamma.gamma.y);
    let a = Mat3::new(1.0, 0.0, -x, 0.0, 1.0, -y, 0.0, 0.0, 0.0);
    let b = Mat3::new(-x * y, 1.0 + x * x, -y, -(1.0 + y * y), x * y, x, 0.0, 0.0, 0.0);
    (a, b)
}

/// `γ_t·(V×γ) + γ·(Ω×(V×γ))`, zero for the flow of a fixed point.
///
/// Adding `δ` to `γ_t` changes the residual by `δ·(V×γ)`.
pub fn differential_epipolar_residual(gamma: &Vec3, gamma_t: &Vec3, motion: &CameraMotion) -> f64 {
    let vg = motion.v.cross(gamma);
    gamma_t.dot(&vg) + gamma.dot(&motion.omega.cross(&vg))
}
