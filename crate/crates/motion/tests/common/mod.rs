//! Exact camera trajectories and finite-difference helpers shared by the
//! motion tests.
#![allow(dead_code)]

use mvg_core::{rot_axis, skew, ImagePoint, Mat3, Vec3};
use mvg_motion::CameraMotion;

/// `R(t) = exp(tÂ) exp(½t²B̂)`, `c(t) = c₁t + c₂t²/2 + c₃t³/6`.
#[derive(Clone, Copy)]
pub struct Trajectory {
    pub a: Vec3,
    pub b: Vec3,
    pub c1: Vec3,
    pub c2: Vec3,
    pub c3: Vec3,
}

impl Trajectory {
    /// Fast generic motion, so that truncation dominates rounding in the
    /// finite differences down to `h = 1e−4`.
    pub fn generic() -> Trajectory {
        Trajectory {
            a: Vec3::new(2.0, -3.0, 4.0),
            b: Vec3::new(-5.0, 3.0, 6.0),
            c1: Vec3::new(12.0, -8.0, 10.0),
            c2: Vec3::new(-30.0, 20.0, 15.0),
            c3: Vec3::new(50.0, -40.0, 60.0),
        }
    }

    pub fn r(&self, t: f64) -> Mat3 {
        rot_axis(&(self.a * t)) * rot_axis(&(self.b * (0.5 * t * t)))
    }

    /// `(R, Ṙ, R̈)`.
    pub fn r_derivs(&self, t: f64) -> (Mat3, Mat3, Mat3) {
        let (ha, hb) = (skew(&self.a), skew(&self.b));
        let e1 = rot_axis(&(self.a * t));
        let e2 = rot_axis(&(self.b * (0.5 * t * t)));
        let r = e1 * e2;
        let r_t = ha * e1 * e2 + e1 * hb * e2 * t;
        let r_tt = ha * ha * e1 * e2 + ha * e1 * hb * e2 * (2.0 * t) + e1 * hb * e2 + e1 * hb * hb * e2 * (t * t);
        (r, r_t, r_tt)
    }

    pub fn c(&self, t: f64) -> Vec3 {
        self.c1 * t + self.c2 * (t * t / 2.0) + self.c3 * (t * t * t / 6.0)
    }

    pub fn c_t(&self, t: f64) -> Vec3 {
        self.c1 + self.c2 * t + self.c3 * (t * t / 2.0)
    }

    pub fn c_tt(&self, t: f64) -> Vec3 {
        self.c2 + self.c3 * t
    }

    /// Relative motion of the camera at time `t`.
    pub fn motion(&self, t: f64) -> CameraMotion {
        let (r, r_t, r_tt) = self.r_derivs(t);
        CameraMotion::from_trajectory(&r, &r_t, &r_tt, &self.c_t(t), &self.c_tt(t))
    }

    /// Camera-frame coordinates of a world point.
    pub fn to_camera(&self, p: &Vec3, t: f64) -> Vec3 {
        self.r(t) * (p - self.c(t))
    }

    /// Absolute `(Ω, V)` at time `t`, with `V = dT/dt` for `T = −Rc`.
    pub fn absolute(&self, t: f64) -> (Vec3, Vec3) {
        let (r, r_t, _) = self.r_derivs(t);
        let w = mvg_core::unskew(&(r_t * r.transpose()));
        (w, -(r_t * self.c(t)) - r * self.c_t(t))
    }
}

pub fn image(p_cam: &Vec3) -> (Vec3, f64) {
    (p_cam / p_cam.z, p_cam.z)
}

pub fn point(gamma: Vec3, rho: f64) -> ImagePoint {
    ImagePoint {
        gamma,
        rho,
        rho_prime: None,
        rho_second: None,
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

pub fn vrel(a: &Vec3, b: &Vec3) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Observed convergence order between consecutive step sizes a decade apart.
pub fn orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log10()).collect()
}

pub const STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

pub fn assert_second_order(name: &str, errors: &[f64]) {
    for order in orders(errors) {
        assert!((order - 2.0).abs() <= 0.2, "{name}: errors {errors:?}, order {order}");
    }
}

pub fn central1<F: Fn(f64) -> Vec3>(f: F, h: f64) -> Vec3 {
    (f(h) - f(-h)) / (2.0 * h)
}

pub fn central2<F: Fn(f64) -> Vec3>(f: F, h: f64) -> Vec3 {
    (f(h) - f(0.0) * 2.0 + f(-h)) / (h * h)
}

pub fn five_point<F: Fn(f64) -> f64>(f: F, h: f64) -> f64 {
    (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h)
}

/// Classical RK4 for `y' = f(t, y)` from `0` to `t`.
pub fn rk4<F: Fn(f64, &Vec3) -> Vec3>(f: &F, y0: Vec3, t: f64, steps: usize) -> Vec3 {
    let dt = t / steps as f64;
    let mut y = y0;
    for i in 0..steps {
        let s = i as f64 * dt;
        let k1 = f(s, &y);
        let k2 = f(s + dt / 2.0, &(y + k1 * (dt / 2.0)));
        let k3 = f(s + dt / 2.0, &(y + k2 * (dt / 2.0)));
        let k4 = f(s + dt, &(y + k3 * dt));
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
    }
    y
}
