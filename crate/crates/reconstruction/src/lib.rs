//! Two-view reconstruction of a space curve point and its Frenet frame.
//!
//! All vectors are in the world basis. Rays are scaled so that
//! `e₃ᵢ·γᵢ = 1`, which makes `ρᵢ` the depth along each optical axis.
//! Image normals are `nᵢ = tᵢ × e₃ᵢ`, hence `nᵢ·(γᵢ×tᵢ) = −1`.

use mvg_core::{from_pixel, solve3, CameraPose, Frenet2, Frenet3, GeomError, Mat3, Tolerances, Vec3};
use mvg_projection::{intrinsics_transfer, project_sample, Coords, FrameId, ImageCurveSample, SpaceCurveSample};

pub type Result<T> = std::result::Result<T, GeomError>;

/// One view of a curve point, expressed in the world basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViewMeasurement {
    pub gamma: Vec3,
    pub t: Vec3,
    pub kappa: f64,
    pub kappadot: f64,
    /// Optical axis `e₃ᵢ`.
    pub axis: Vec3,
    pub center: Vec3,
}

impl ViewMeasurement {
    /// `nᵢ = tᵢ × e₃ᵢ`.
    pub fn normal(&self) -> Vec3 {
        self.t.cross(&self.axis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangulation {
    pub rho1: f64,
    pub rho2: f64,
    pub point: Vec3,
    /// `‖c₁ + ρ₁γ₁ − c₂ − ρ₂γ₂‖`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentEstimate {
    pub t: Vec3,
    pub theta1: f64,
    pub theta2: f64,
    /// Sign applied to the normalized plane intersection.
    pub eps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureEstimate {
    pub k: f64,
    pub n: Vec3,
    pub b: Vec3,
    pub cond: f64,
    /// `NK·T`, zero up to rounding.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorsionEstimate {
    pub tau: f64,
    pub kdot: f64,
    pub cond: f64,
    /// `τ̃·T`, zero up to rounding.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Residuals {
    /// Sine of the angle between the two view planes `γᵢ×tᵢ`. Errors in
    /// `N, K` grow like its inverse square and in `τ, K̇` like its inverse cube.
    pub plane_separation: f64,
    pub triangulation: f64,
    /// Largest `‖tᵢ − proj(T)‖` over both views.
    pub tangent_reprojection: f64,
    pub curvature_orthogonality: f64,
    pub torsion_orthogonality: f64,
    pub curvature_cond: f64,
    pub torsion_cond: f64,
}

/// Reconstructed point with an arc-length Frenet frame (`G = 1`).
///
/// When both views see zero curvature the frame is a line record
/// (`has_normal == false`) and torsion is not reconstructed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructedPoint {
    pub point: Vec3,
    pub rho1: f64,
    pub rho2: f64,
    pub frame: Frenet3,
    pub theta1: f64,
    pub theta2: f64,
    pub residuals: Residuals,
}

/// Rotates a camera measurement into the world basis.
///
/// Pixel samples are first mapped to normalized coordinates with the pose's
/// intrinsics.
pub fn lift_measurement(sample: &ImageCurveSample, pose: &CameraPose) -> Result<ViewMeasurement> {
    let tol = Tolerances::DEFAULT;
    let (gamma, f2) = match sample.coords {
        Coords::Normalized => (sample.point.gamma, sample.frame2),
        Coords::Pixel => {
            let g = from_pixel(&sample.point.gamma, &pose.k)?;
            let f = Frenet2::from_tangent(sample.frame2.t, sample.frame2.kappa, sample.frame2.kappadot);
            (g, intrinsics_transfer(&f, &pose.k.inverse_matrix()?, &tol)?)
        }
    };
    let rt = pose.r.transpose();
    Ok(ViewMeasurement {
        gamma: rt * gamma,
        t: rt * f2.t,
        kappa: f2.kappa,
        kappadot: f2.kappadot,
        axis: rt * Vec3::z(),
        center: pose.c,
    })
}

pub fn triangulate(m1: &ViewMeasurement, m2: &ViewMeasurement, tol: &Tolerances) -> Result<Triangulation> {
    let (g1, g2) = (m1.gamma, m2.gamma);
    let b = m2.center - m1.center;
    let cross = g1.cross(&g2);
    let d = g1.norm_squared() * g2.norm_squared() - g1.dot(&g2).powi(2);
    if d <= tol.parallel {
        return Err(GeomError::ParallelRays);
    }
    let scale = b.norm() * cross.norm();
    let coplanar = b.dot(&cross).abs();
    if coplanar > tol.coplanar * scale {
        return Err(GeomError::NonCoplanarRays {
            residual: coplanar / scale,
        });
    }
    let (bg1, bg2, g12) = (b.dot(&g1), b.dot(&g2), g1.dot(&g2));
    let rho1 = (bg1 * g2.norm_squared() - bg2 * g12) / d;
    let rho2 = (bg1 * g12 - bg2 * g1.norm_squared()) / d;
    for rho in [rho1, rho2] {
        if rho <= tol.depth {
            return Err(GeomError::NegativeDepth { depth: rho });
        }
    }
    let point = m1.center + g1 * rho1;
    Ok(Triangulation {
        rho1,
        rho2,
        point,
        residual: (point - m2.center - g2 * rho2).norm(),
    })
}

/// Angle of `T` in the `(γ/‖γ‖, t)` pair of one view, from the other view's
/// tangent plane: `tan θ = −γ̂·w / t·w` with `w = γ′×t′`, `θ ∈ [0, π)`.
fn theta(m: &ViewMeasurement, other: &ViewMeasurement) -> f64 {
    let w = other.gamma.cross(&other.t);
    let (mut c, mut s) = (m.t.dot(&w), -m.gamma.normalize().dot(&w));
    if s < 0.0 || (s == 0.0 && c < 0.0) {
        c = -c;
        s = -s;
    }
    s.atan2(c)
}

pub fn reconstruct_tangent(m1: &ViewMeasurement, m2: &ViewMeasurement, tol: &Tolerances) -> Result<TangentEstimate> {
    let a = m1.t.cross(&m1.gamma);
    let b = m2.t.cross(&m2.gamma);
    let c = a.cross(&b);
    if c.norm() <= tol.epi * a.norm() * b.norm() {
        return Err(GeomError::EpipolarTangency);
    }
    let t0 = c.normalize();
    let side = |m: &ViewMeasurement| (t0 - m.gamma * t0.dot(&m.axis)).dot(&m.t);
    let (s1, s2) = (side(m1), side(m2));
    if s1.signum() != s2.signum() || s1 == 0.0 {
        return Err(GeomError::InconsistentSign);
    }
    let eps = s1.signum();
    let t = t0 * eps;
    let theta1 = theta(m1, m2);
    let theta2 = theta(m2, m1);
    debug_assert!({
        let via = (m1.gamma.normalize() * theta1.cos() + m1.t * theta1.sin()).normalize();
        (via - t).norm() < 1e-6
    });
    Ok(TangentEstimate { t, theta1, theta2, eps })
}

/// Sine of the angle between the planes spanned by `γᵢ` and `tᵢ`; zero at
/// epipolar tangency.
pub fn plane_separation(m1: &ViewMeasurement, m2: &ViewMeasurement) -> f64 {
    let a = m1.gamma.cross(&m1.t).normalize();
    let b = m2.gamma.cross(&m2.t).normalize();
    a.cross(&b).norm()
}

/// `(ρ₁′/(ρ₁g₁), ρ₂′/(ρ₂g₂))`.
pub fn depth_speed_relations(m1: &ViewMeasurement, m2: &ViewMeasurement, tol: &Tolerances) -> Result<(f64, f64)> {
    let one = |m: &ViewMeasurement, o: &ViewMeasurement| {
        let w = o.gamma.cross(&o.t);
        let den = m.gamma.dot(&w);
        if den.abs() <= tol.epi * m.gamma.norm() * w.norm() {
            return Err(GeomError::EpipolarTangency);
        }
        Ok(-m.t.dot(&w) / den)
    };
    Ok((one(m1, m2)?, one(m2, m1)?))
}

/// `g₁/g₂ = (ρ₂/ρ₁) ‖T − (e₃₁·T)γ₁‖ / ‖T − (e₃₂·T)γ₂‖`.
pub fn two_view_speed_ratio(
    tt: &Vec3,
    m1: &ViewMeasurement,
    m2: &ViewMeasurement,
    rho1: f64,
    rho2: f64,
    tol: &Tolerances,
) -> Result<f64> {
    let a = (tt - m1.gamma * tt.dot(&m1.axis)).norm();
    let b = (tt - m2.gamma * tt.dot(&m2.axis)).norm();
    for speed in [a, b] {
        if speed <= tol.reg {
            return Err(GeomError::StationaryImagePoint { speed });
        }
    }
    Ok(rho2 / rho1 * a / b)
}

/// Image speed per unit space arc length in view `m`.
pub fn view_speed(tt: &Vec3, m: &ViewMeasurement, rho: f64) -> f64 {
    (tt - m.gamma * tt.dot(&m.axis)).norm() / rho
}

/// `dgᵢ/dS̃ = K N·(γᵢ×nᵢ)/ρᵢ − 2gᵢ (e₃ᵢ·T)/ρᵢ`.
pub fn view_speed_derivative(tt: &Vec3, nn: &Vec3, k: f64, m: &ViewMeasurement, rho: f64, g: f64) -> f64 {
    (k * nn.dot(&m.gamma.cross(&m.normal())) - 2.0 * g * tt.dot(&m.axis)) / rho
}

fn system(m1: &ViewMeasurement, m2: &ViewMeasurement, tt: &Vec3) -> Mat3 {
    let r1 = m1.gamma.cross(&m1.t);
    let r2 = m2.gamma.cross(&m2.t);
    Mat3::from_rows(&[r1.transpose(), r2.transpose(), tt.transpose()])
}

/// Solves `(γᵢ×tᵢ)·NK = −ρᵢgᵢ²κᵢ`, `T·NK = 0`.
#[allow(clippy::too_many_arguments)]
pub fn reconstruct_curvature(
    m1: &ViewMeasurement,
    m2: &ViewMeasurement,
    tt: &Vec3,
    rho1: f64,
    rho2: f64,
    g1: f64,
    g2: f64,
    tol: &Tolerances,
) -> Result<CurvatureEstimate> {
    for speed in [g1, g2] {
        if speed <= tol.reg {
            return Err(GeomError::StationaryImagePoint { speed });
        }
    }
    let rhs = Vec3::new(-rho1 * g1 * g1 * m1.kappa, -rho2 * g2 * g2 * m2.kappa, 0.0);
    let sol = solve3(&system(m1, m2, tt), &rhs, tol.cond)?;
    let nk = sol.x;
    let k = nk.norm();
    if k <= tol.curvature {
        return Err(GeomError::ZeroCurvature {
            curvature: k,
            speed: 1.0,
            tangent: *tt,
        });
    }
    let n = nk / k;
    Ok(CurvatureEstimate {
        k,
        n,
        b: tt.cross(&n),
        cond: sol.cond,
        residual: nk.dot(tt),
    })
}

/// Solves for `τ̃ = K̇N + KτB` from
/// `(γᵢ×tᵢ)·τ̃ = −[3gᵢ²κᵢ(e₃ᵢ·T) + ρᵢ(3gᵢgᵢ′κᵢ + gᵢ³κ̇ᵢ)]`, `T·τ̃ = 0`.
#[allow(clippy::too_many_arguments)]
pub fn reconstruct_torsion(
    m1: &ViewMeasurement,
    m2: &ViewMeasurement,
    tt: &Vec3,
    curvature: &CurvatureEstimate,
    rho: [f64; 2],
    g: [f64; 2],
    g_prime: [f64; 2],
    tol: &Tolerances,
) -> Result<TorsionEstimate> {
    if curvature.k <= tol.curvature {
        return Err(GeomError::ZeroCurvature {
            curvature: curvature.k,
            speed: 1.0,
            tangent: *tt,
        });
    }
    let rhs_of = |m: &ViewMeasurement, i: usize| {
        let (g, gp, r) = (g[i], g_prime[i], rho[i]);
        -(3.0 * g * g * m.kappa * tt.dot(&m.axis) + r * (3.0 * g * gp * m.kappa + g * g * g * m.kappadot))
    };
    let rhs = Vec3::new(rhs_of(m1, 0), rhs_of(m2, 1), 0.0);
    let sol = solve3(&system(m1, m2, tt), &rhs, tol.cond)?;
    let tv = sol.x;
    Ok(TorsionEstimate {
        tau: tv.dot(&curvature.b) / curvature.k,
        kdot: tv.dot(&curvature.n),
        cond: sol.cond,
        residual: tv.dot(tt),
    })
}

fn reprojection(tt: &Vec3, m: &ViewMeasurement) -> f64 {
    let v = tt - m.gamma * tt.dot(&m.axis);
    (v.normalize() - m.t).norm()
}

/// Full pipeline: position, tangent, curvature, torsion and curvature derivative.
pub fn reconstruct(m1: &ViewMeasurement, m2: &ViewMeasurement, tol: &Tolerances) -> Result<ReconstructedPoint> {
    let tri = triangulate(m1, m2, tol)?;
    let tan = reconstruct_tangent(m1, m2, tol)?;
    let tt = tan.t;
    let (rho1, rho2) = (tri.rho1, tri.rho2);
    let g1 = view_speed(&tt, m1, rho1);
    let g2 = view_speed(&tt, m2, rho2);
    let mut residuals = Residuals {
        plane_separation: plane_separation(m1, m2),
        triangulation: tri.residual,
        tangent_reprojection: reprojection(&tt, m1).max(reprojection(&tt, m2)),
        ..Residuals::default()
    };
    let done = |frame, residuals| ReconstructedPoint {
        point: tri.point,
        rho1,
        rho2,
        frame,
        theta1: tan.theta1,
        theta2: tan.theta2,
        residuals,
    };
    let curv = match reconstruct_curvature(m1, m2, &tt, rho1, rho2, g1, g2, tol) {
        Ok(c) => c,
        Err(GeomError::ZeroCurvature { .. }) => return Ok(done(Frenet3::line(1.0, tt), residuals)),
        Err(e) => return Err(e),
    };
    residuals.curvature_orthogonality = curv.residual;
    residuals.curvature_cond = curv.cond;
    let gp1 = view_speed_derivative(&tt, &curv.n, curv.k, m1, rho1, g1);
    let gp2 = view_speed_derivative(&tt, &curv.n, curv.k, m2, rho2, g2);
    let tor = reconstruct_torsion(m1, m2, &tt, &curv, [rho1, rho2], [g1, g2], [gp1, gp2], tol)?;
    residuals.torsion_orthogonality = tor.residual;
    residuals.torsion_cond = tor.cond;
    let frame = Frenet3 {
        t: tt,
        n: curv.n,
        b: curv.b,
        g: 1.0,
        g_prime: 0.0,
        k: curv.k,
        kdot: tor.kdot,
        tau: tor.tau,
        has_normal: true,
    };
    Ok(done(frame, residuals))
}

/// Predicts the normalized measurement in a third view.
pub fn transfer_to_view(
    m1: &ViewMeasurement,
    m2: &ViewMeasurement,
    pose3: &CameraPose,
    tol: &Tolerances,
) -> Result<ImageCurveSample> {
    let rec = reconstruct(m1, m2, tol)?;
    let sample = SpaceCurveSample {
        point: pose3.r * (rec.point - pose3.c),
        frame: rec.frame.rotated(&pose3.r),
        frame_id: FrameId::Camera(2),
    };
    project_sample(&sample, tol)
}
