use std::f64::consts::TAU;

use mvg_core::{frenet3_from_derivatives, CameraPose, Mat3, Vec3};
use mvg_projection::{FrameId, SpaceCurveSample};
use serde::{Deserialize, Serialize};

use crate::{perpendicular_basis, DatasetError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadricKind {
    Sphere,
    Ellipsoid,
}

/// Axis-aligned `yᵀAy = 1` with `y = Γʷ − center`, `A = diag(1/aᵢ²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadric {
    pub id: usize,
    pub kind: QuadricKind,
    pub center: [f64; 3],
    pub semi_axes: [f64; 3],
}

/// One point of a contour generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSample {
    pub phi: f64,
    /// World frame; the generator is an ellipse, parametrized by `phi`.
    pub sample: SpaceCurveSample,
    /// Normal curvature along the viewing direction against the inward normal.
    pub kt: f64,
    /// Outward unit surface normal.
    pub normal: Vec3,
}

impl Quadric {
    pub fn sphere(id: usize, center: Vec3, r: f64) -> Quadric {
        Quadric {
            id,
            kind: QuadricKind::Sphere,
            center: center.into(),
            semi_axes: [r; 3],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| {
            Err(DatasetError::InvalidQuadric {
                id: self.id,
                reason: m.to_string(),
            })
        };
        if !self.semi_axes.iter().all(|a| *a > 0.0 && a.is_finite()) || !self.center.iter().all(|c| c.is_finite()) {
            return bad("semi-axes must be positive");
        }
        let [a, b, c] = self.semi_axes;
        if self.kind == QuadricKind::Sphere && !(a == b && b == c) {
            return bad("sphere needs equal semi-axes");
        }
        Ok(())
    }

    pub fn center(&self) -> Vec3 {
        Vec3::from(self.center)
    }

    fn axes(&self) -> Vec3 {
        Vec3::from(self.semi_axes)
    }

    pub fn matrix(&self) -> Mat3 {
        Mat3::from_diagonal(&self.axes().map(|a| 1.0 / (a * a)))
    }

    /// `yᵀAy − 1`.
    pub fn level(&self, x: &Vec3) -> f64 {
        let y = x - self.center();
        y.dot(&(self.matrix() * y)) - 1.0
    }

    pub fn outward_normal(&self, x: &Vec3) -> Vec3 {
        (self.matrix() * (x - self.center())).normalize()
    }

    /// Normal curvature in direction `v`, positive on the convex side.
    pub fn normal_curvature(&self, x: &Vec3, v: &Vec3) -> f64 {
        if self.kind == QuadricKind::Sphere {
            return 1.0 / self.semi_axes[0];
        }
        let a = self.matrix();
        let v = v.normalize();
        v.dot(&(a * v)) / (a * (x - self.center())).norm()
    }

    /// `(Γʷ, ∂φ, ∂φ², ∂φ³)` of the generator seen from `c` at angle `phi`.
    ///
    /// In coordinates where the quadric is the unit sphere the generator is
    /// the circle `y·p = 1`, of radius `√(1 − 1/‖p‖²)`.
    pub fn generator_point(&self, c: &Vec3, phi: f64) -> Result<[Vec3; 4]> {
        let axes = self.axes();
        let p = (c - self.center()).component_div(&axes);
        let d = p.norm();
        if d <= 1.0 {
            return Err(DatasetError::CameraInsideQuadric);
        }
        let u = p / d;
        let (e1, e2) = perpendicular_basis(&u);
        let k = (1.0 - 1.0 / (d * d)).sqrt();
        let (s, co) = phi.sin_cos();
        let rad = e1 * co + e2 * s;
        let tan = e2 * co - e1 * s;
        let scale = |v: Vec3| v.component_mul(&axes) * k;
        Ok([
            self.center() + (u / d).component_mul(&axes) + scale(rad),
            scale(tan),
            -scale(rad),
            -scale(tan),
        ])
    }

    /// Generator tangent `Ay × Ap` through `x`, up to scale.
    pub fn generator_tangent(&self, x: &Vec3, c: &Vec3) -> Vec3 {
        let a = self.matrix();
        (a * (x - self.center())).cross(&(a * (c - self.center())))
    }

    /// `Γʷ_t = λ(Γʷ − c)` with `λ = ċ·Ay / (Γʷ−c)ᵀA(Γʷ−c)`: the slip that keeps
    /// the ray through `x` tangent to the surface while the center moves.
    pub fn tangency_velocity(&self, x: &Vec3, c: &Vec3, c_t: &Vec3) -> Vec3 {
        let a = self.matrix();
        let ray = x - c;
        ray * (c_t.dot(&(a * (x - self.center()))) / ray.dot(&(a * ray)))
    }
}

/// `n` generator samples seen from `pose`, uniform in angle.
pub fn quadric_contour_generator(q: &Quadric, pose: &CameraPose, n: usize) -> Result<Vec<GeneratorSample>> {
    q.validate()?;
    (0..n)
        .map(|i| {
            let phi = TAU * i as f64 / n as f64;
            let [x, d1, d2, d3] = q.generator_point(&pose.c, phi)?;
            Ok(GeneratorSample {
                phi,
                sample: SpaceCurveSample {
                    point: x,
                    frame: frenet3_from_derivatives(&d1, &d2, &d3)?,
                    frame_id: FrameId::World,
                },
                kt: q.normal_curvature(&x, &(x - pose.c)),
                normal: q.outward_normal(&x),
            })
        })
        .collect()
}

/// Follows one generator point from `t0` to `t1` under the epipolar
/// parametrization with classical RK4. `center(t)` returns `(c, ċ)`.
pub fn track_generator<F: Fn(f64) -> (Vec3, Vec3)>(
    q: &Quadric,
    x0: Vec3,
    t0: f64,
    t1: f64,
    steps: usize,
    center: F,
) -> Vec3 {
    let f = |t: f64, x: &Vec3| {
        let (c, c_t) = center(t);
        q.tangency_velocity(x, &c, &c_t)
    };
    let dt = (t1 - t0) / steps as f64;
    let mut x = x0;
    for i in 0..steps {
        let t = t0 + i as f64 * dt;
        let k1 = f(t, &x);
        let k2 = f(t + dt / 2.0, &(x + k1 * (dt / 2.0)));
        let k3 = f(t + dt / 2.0, &(x + k2 * (dt / 2.0)));
        let k4 = f(t + dt, &(x + k3 * dt));
        x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
    }
    x
}
