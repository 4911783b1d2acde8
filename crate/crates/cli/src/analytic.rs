//! Exact image kinematics of scene points under the continuous orbit.

use mvg_core::{Frenet2, ImagePoint, Vec3};
use mvg_dataset::{CameraState, Orbit, Quadric};
use mvg_motion::CameraMotion;

fn flat(v: Vec3) -> Vec3 {
    Vec3::new(v.x, v.y, 0.0)
}

/// Normalized image data of a world point `x` moving with `x_t`, on a
/// curve with parameter tangent `x_s`.
#[derive(Debug, Clone, Copy)]
pub struct Observation {
    pub gamma: Vec3,
    pub rho: f64,
    pub gamma_t: Vec3,
    pub gamma_s: Vec3,
    pub rho_s: f64,
}

impl Observation {
    pub fn new(cam: &CameraState, x: &Vec3, x_t: &Vec3, x_s: &Vec3) -> Observation {
        let p = cam.r * (x - cam.c);
        let p_t = cam.r_t * (x - cam.c) + cam.r * (x_t - cam.c_t);
        let p_s = cam.r * x_s;
        let gamma = p / p.z;
        Observation {
            gamma,
            rho: p.z,
            gamma_t: flat((p_t - gamma * p_t.z) / p.z),
            gamma_s: flat((p_s - gamma * p_s.z) / p.z),
            rho_s: p_s.z,
        }
    }

    pub fn point(&self) -> ImagePoint {
        ImagePoint {
            gamma: self.gamma,
            rho: self.rho,
            rho_prime: None,
            rho_second: None,
        }
    }

    /// Unit tangent along `sign·γ_s`, with `n = t × e₃`.
    pub fn frame(&self, sign: f64) -> Frenet2 {
        Frenet2::from_tangent(self.gamma_s.normalize() * sign, 0.0, 0.0)
    }

    /// Normal image velocity `β = γ_t·n`.
    pub fn beta(&self, sign: f64) -> f64 {
        self.gamma_t.dot(&self.frame(sign).n)
    }
}

pub fn motion(cam: &CameraState) -> CameraMotion {
    CameraMotion::from_trajectory(&cam.r, &cam.r_t, &cam.r_tt, &cam.c_t, &cam.c_tt)
}

pub fn camera(orbit: &Orbit, t: f64) -> CameraState {
    orbit.state(t).expect("orbit validated with the scene")
}

/// One point of a quadric's contour generator, followed through time.
pub struct GeneratorTrack<'a> {
    pub quadric: &'a Quadric,
    pub orbit: &'a Orbit,
    pub t0: f64,
    pub x0: Vec3,
    /// Orientation of `γ_s` that makes `γ×t` point into the quadric.
    pub sign: f64,
}

/// RK4 steps per tracked interval.
const TRACK_STEPS: usize = 8;

impl<'a> GeneratorTrack<'a> {
    pub fn new(quadric: &'a Quadric, orbit: &'a Orbit, t0: f64, phi: f64) -> mvg_dataset::Result<GeneratorTrack<'a>> {
        let cam = camera(orbit, t0);
        let x0 = quadric.generator_point(&cam.c, phi)?[0];
        let mut track = GeneratorTrack {
            quadric,
            orbit,
            t0,
            x0,
            sign: 1.0,
        };
        let o = track.observe(0.0);
        let t = o.frame(1.0).t;
        if o.gamma.cross(&t).dot(&(cam.r * quadric.outward_normal(&x0))) > 0.0 {
            track.sign = -1.0;
        }
        Ok(track)
    }

    pub fn world(&self, dt: f64) -> Vec3 {
        if dt == 0.0 {
            return self.x0;
        }
        mvg_dataset::track_generator(self.quadric, self.x0, self.t0, self.t0 + dt, TRACK_STEPS, |t| {
            let s = camera(self.orbit, t);
            (s.c, s.c_t)
        })
    }

    /// World velocity of the tracked point and the observation at `t0 + dt`.
    pub fn velocity_and_observation(&self, dt: f64) -> (Vec3, Observation) {
        let cam = camera(self.orbit, self.t0 + dt);
        let x = self.world(dt);
        let x_t = self.quadric.tangency_velocity(&x, &cam.c, &cam.c_t);
        let x_s = self.quadric.generator_tangent(&x, &cam.c);
        (x_t, Observation::new(&cam, &x, &x_t, &x_s))
    }

    pub fn observe(&self, dt: f64) -> Observation {
        self.velocity_and_observation(dt).1
    }
}

pub fn central1<T, F>(f: F, h: f64) -> T
where
    F: Fn(f64) -> T,
    T: std::ops::Sub<Output = T> + std::ops::Div<f64, Output = T>,
{
    (f(h) - f(-h)) / (2.0 * h)
}

pub fn central2<T, F>(f: F, h: f64) -> T
where
    F: Fn(f64) -> T,
    T: Copy
        + std::ops::Sub<Output = T>
        + std::ops::Add<Output = T>
        + std::ops::Mul<f64, Output = T>
        + std::ops::Div<f64, Output = T>,
{
    (f(h) - f(0.0) * 2.0 + f(-h)) / (h * h)
}

/// Fourth-order first derivative.
pub fn five_point<T, F>(f: F, h: f64) -> T
where
    F: Fn(f64) -> T,
    T: Copy
        + std::ops::Sub<Output = T>
        + std::ops::Add<Output = T>
        + std::ops::Mul<f64, Output = T>
        + std::ops::Div<f64, Output = T>,
{
    (f(-2.0 * h) - f(-h) * 8.0 + f(h) * 8.0 - f(2.0 * h)) / (12.0 * h)
}

/// Five-point differences at `h` and `h/2` combined by Richardson
/// extrapolation: sixth order.
pub fn richardson<T, F>(f: F, h: f64) -> T
where
    F: Fn(f64) -> T,
    T: Copy
        + std::ops::Sub<Output = T>
        + std::ops::Add<Output = T>
        + std::ops::Mul<f64, Output = T>
        + std::ops::Div<f64, Output = T>,
{
    (five_point(&f, h / 2.0) * 16.0 - five_point(&f, h)) / 15.0
}
