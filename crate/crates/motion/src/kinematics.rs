use mvg_core::{skew, unskew, GeomError, Mat3, Vec3};

use crate::Result;

/// First- and second-order camera motion at the reference instant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CameraMotion {
    pub omega: Vec3,
    pub omega_t: Vec3,
    /// `V = dT/dt` with `T = −Rc`; at the reference instant `V = −dc/dt`.
    pub v: Vec3,
    pub v_t: Vec3,
}

impl CameraMotion {
    pub fn omega_hat(&self) -> Mat3 {
        skew(&self.omega)
    }

    /// `Ω̂² + [Ω_t]ˆ`, the rotational part of `d²R/dt² Rᵀ`.
    pub fn rotational_acceleration(&self) -> Mat3 {
        let w = self.omega_hat();
        w * w + skew(&self.omega_t)
    }

    /// Motion relative to the camera at time `t` of a trajectory `R(t)`,
    /// `c(t)` given with its first two derivatives.
    ///
    /// The camera position itself drops out because the relative frame puts
    /// the camera at the origin: `V = −Rċ`, `V_t = −2Ṙċ − Rc̈`.
    pub fn from_trajectory(r: &Mat3, r_t: &Mat3, r_tt: &Mat3, c_t: &Vec3, c_tt: &Vec3) -> CameraMotion {
        let w = r_t * r.transpose();
        let w_t = r_tt * r.transpose() + r_t * r_t.transpose();
        CameraMotion {
            omega: unskew(&w),
            omega_t: unskew(&w_t),
            v: -(r * c_t),
            v_t: -(r_t * c_t) * 2.0 - r * c_tt,
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.omega, self.omega_t, self.v, self.v_t]
            .iter()
            .all(|x| x.iter().all(|c| c.is_finite()))
    }
}

/// `Ω` from `Ω̂ = Ṙ Rᵀ`. Fails when the product is not skew-symmetric.
pub fn angular_velocity(r_t: &Mat3, r: &Mat3) -> Result<Vec3> {
    let w = r_t * r.transpose();
    let sym = (w + w.transpose()) * 0.5;
    let residual = sym.norm();
    if residual > 1e-6 {
        return Err(GeomError::NonSkew { residual });
    }
    Ok(unskew(&w))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorPose {
    pub r: Mat3,
    /// Translation `T = −Rc`.
    pub t: Vec3,
    pub c: Vec3,
}

/// Second-order expansions of `R`, `T` and `c` about the reference instant.
pub fn taylor_pose(motion: &CameraMotion, dt: f64) -> TaylorPose {
    let w = motion.omega_hat();
    let half = 0.5 * dt * dt;
    TaylorPose {
        r: Mat3::identity() + w * dt + motion.rotational_acceleration() * half,
        t: motion.v * dt + motion.v_t * half,
        c: -motion.v * dt + (w * motion.v * 2.0 - motion.v_t) * half,
    }
}

/// Camera-frame velocity of a point: `Γ_t = Ω̂Γ + RΓʷ_t − Rc_t`.
///
/// At the reference instant `−c_t = V`.
pub fn point_velocity_camera(gamma: &Vec3, gw_t: &Vec3, r: &Mat3, omega: &Vec3, c_t: &Vec3) -> Vec3 {
    omega.cross(gamma) + r * gw_t - r * c_t
}

#[cfg(test)]
mod tests {
    use super::*;
    use mvg_core::rot_z;

    #[test]
    fn angular_velocity_examples() {
        let w = angular_velocity(&skew(&Vec3::z()), &Mat3::identity()).unwrap();
        assert_eq!(w, Vec3::z());
        assert_eq!(
            angular_velocity(&Mat3::zeros(), &Mat3::identity()).unwrap(),
            Vec3::zeros()
        );
        assert!(matches!(
            angular_velocity(&Mat3::identity(), &Mat3::identity()),
            Err(GeomError::NonSkew { .. })
        ));
    }

    #[test]
    fn taylor_pose_at_zero_and_without_rotation() {
        let m = CameraMotion {
            omega: Vec3::new(0.1, 0.2, 0.3),
            omega_t: Vec3::new(-0.1, 0.0, 0.4),
            v: Vec3::new(1.0, 0.0, 0.5),
            v_t: Vec3::new(0.0, 0.2, 0.0),
        };
        let p = taylor_pose(&m, 0.0);
        assert_eq!((p.r, p.t, p.c), (Mat3::identity(), Vec3::zeros(), Vec3::zeros()));
        let still = CameraMotion {
            omega: Vec3::zeros(),
            omega_t: Vec3::zeros(),
            ..m
        };
        assert_eq!(taylor_pose(&still, 0.7).r, Mat3::identity());
    }

    #[test]
    fn taylor_rotation_is_third_order() {
        let m = CameraMotion {
            omega: Vec3::new(0.0, 0.0, 2.0),
            ..CameraMotion::default()
        };
        let err = |dt: f64| (taylor_pose(&m, dt).r - rot_z(2.0 * dt)).norm();
        let order = (err(1e-2) / err(1e-3)).log10();
        assert!((order - 3.0).abs() < 0.05, "order {order}");
    }

    #[test]
    fn point_velocity_examples() {
        let g = Vec3::new(0.3, -0.2, 4.0);
        assert_eq!(
            point_velocity_camera(&g, &Vec3::zeros(), &Mat3::identity(), &Vec3::zeros(), &Vec3::zeros()),
            Vec3::zeros()
        );
        let v = point_velocity_camera(&g, &Vec3::zeros(), &Mat3::identity(), &Vec3::zeros(), &-Vec3::x());
        assert_eq!(v, Vec3::x());
    }
}
