use std::f64::consts::TAU;

use mvg_core::{rot_axis, skew, CameraPose, Intrinsics, Mat3, Vec3};
use serde::{Deserialize, Serialize};

use crate::{DatasetError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImageFormat {
    pub alpha_u: f64,
    pub alpha_v: f64,
    #[serde(default)]
    pub skew: f64,
    pub u0: f64,
    pub v0: f64,
    pub width: f64,
    pub height: f64,
}

impl ImageFormat {
    pub fn intrinsics(&self) -> Result<Intrinsics> {
        Ok(Intrinsics::new(
            self.alpha_u,
            self.alpha_v,
            self.skew,
            self.u0,
            self.v0,
        )?)
    }

    pub fn contains(&self, px: &Vec3) -> bool {
        (0.0..=self.width).contains(&px.x) && (0.0..=self.height).contains(&px.y)
    }
}

/// Circular orbit around `axis` through `center`, raised by `elevation`
/// along the axis, every camera looking at `center` with `axis` as up.
///
/// Time runs in revolutions: frame `i` is at `t = i / frames`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub center: [f64; 3],
    pub radius: f64,
    pub axis: [f64; 3],
    #[serde(default)]
    pub elevation: f64,
    pub frames: usize,
    pub image: ImageFormat,
}

/// Pose and its first two time derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraState {
    pub r: Mat3,
    pub r_t: Mat3,
    pub r_tt: Mat3,
    pub c: Vec3,
    pub c_t: Vec3,
    pub c_tt: Vec3,
}

/// Unit `e₁, e₂` completing `u` to a right-handed basis; `e₁ = x` for `u = z`.
pub fn perpendicular_basis(u: &Vec3) -> (Vec3, Vec3) {
    let helper = if u.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    let e1 = (helper - u * helper.dot(u)).normalize();
    (e1, u.cross(&e1))
}

/// World-to-camera rotation of a camera at `eye` looking at `target`, with
/// image x to the right and image y down relative to `up`.
pub fn look_at(eye: &Vec3, target: &Vec3, up: &Vec3) -> Result<Mat3> {
    let fwd = target - eye;
    let side = fwd.cross(up);
    if fwd.norm() == 0.0 || side.norm() <= 1e-12 * fwd.norm() * up.norm() {
        return Err(DatasetError::DegenerateLookAt);
    }
    let z = fwd.normalize();
    let x = side.normalize();
    let y = z.cross(&x);
    Ok(Mat3::from_rows(&[x.transpose(), y.transpose(), z.transpose()]))
}

impl Orbit {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(DatasetError::InvalidScene(m.to_string()));
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return bad("orbit radius must be positive");
        }
        if self.frames == 0 {
            return bad("orbit needs at least one frame");
        }
        if !(Vec3::from(self.axis).norm() > 0.0) || !self.elevation.is_finite() {
            return bad("orbit axis must be non-zero");
        }
        if !(self.image.width > 0.0 && self.image.height > 0.0) {
            return bad("image size must be positive");
        }
        self.image.intrinsics()?;
        Ok(())
    }

    pub fn axis(&self) -> Vec3 {
        Vec3::from(self.axis).normalize()
    }

    pub fn frame_time(&self, i: usize) -> f64 {
        i as f64 / self.frames as f64
    }

    fn start(&self) -> Vec3 {
        let (e1, _) = perpendicular_basis(&self.axis());
        Vec3::from(self.center) + e1 * self.radius + self.axis() * self.elevation
    }

    /// Exact pose at time `t`: the frame-0 rig turned about the axis by `2πt`.
    pub fn state(&self, t: f64) -> Result<CameraState> {
        let a = self.axis();
        let center = Vec3::from(self.center);
        let c0 = self.start();
        let r0 = look_at(&c0, &center, &a)?;
        let w = TAU;
        let rot = rot_axis(&(a * (w * t)));
        let ha = skew(&a);
        let arm = rot * (c0 - center);
        Ok(CameraState {
            r: r0 * rot.transpose(),
            r_t: -(r0 * ha * rot.transpose()) * w,
            r_tt: r0 * ha * ha * rot.transpose() * (w * w),
            c: center + arm,
            c_t: ha * arm * w,
            c_tt: ha * ha * arm * (w * w),
        })
    }

    pub fn pose_at(&self, t: f64) -> Result<CameraPose> {
        let s = self.state(t)?;
        Ok(CameraPose::new(s.r, s.c, self.image.intrinsics()?)?)
    }
}

/// Poses of every frame, each built directly by [`look_at`].
pub fn camera_orbit(orbit: &Orbit) -> Result<Vec<CameraPose>> {
    orbit.validate()?;
    let a = orbit.axis();
    let center = Vec3::from(orbit.center);
    let k = orbit.image.intrinsics()?;
    (0..orbit.frames)
        .map(|i| {
            let c = orbit.state(orbit.frame_time(i))?.c;
            Ok(CameraPose::new(look_at(&c, &center, &a)?, c, k)?)
        })
        .collect()
}
