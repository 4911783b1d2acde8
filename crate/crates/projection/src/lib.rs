//! Image-curve differential geometry induced by a space curve.
//!
//! Third-order formulas assume the space curve is parametrized by arc length
//! (`G ≡ 1`); [`project_sample`] renormalizes any [`Frenet3`] first. Image
//! normals follow `n = t × e₃`, which gives `n·(γ×t) = −1` and
//! `t·(γ×n) = +1`. Those two identities fix every sign below.

use mvg_core::{e3, project_with, Frenet2, Frenet3, GeomError, ImagePoint, Mat3, Tolerances, Vec3};

pub type Result<T> = std::result::Result<T, GeomError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameId {
    World,
    Camera(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceCurveSample {
    pub point: Vec3,
    pub frame: Frenet3,
    pub frame_id: FrameId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coords {
    Normalized,
    Pixel,
}

/// Image sample. In normalized coordinates produced by [`project_sample`],
/// `frame2.g` is `g/G` and `frame2.g_prime` is `dg/dS̃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageCurveSample {
    pub point: ImagePoint,
    pub frame2: Frenet2,
    pub coords: Coords,
}

#[inline]
fn agree(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-8 * scale.max(f64::MIN_POSITIVE) + 1e-300
}

/// `t = (T − T_z γ)/‖T − T_z γ‖` and `n = t × e₃`. Depth is not needed.
pub fn project_tangent(tt: &Vec3, gamma: &Vec3, tol: &Tolerances) -> Result<(Vec3, Vec3)> {
    let v = tt - gamma * tt.z;
    let norm = v.norm();
    if norm <= tol.reg {
        return Err(GeomError::TangentAlongRay);
    }
    let t = Vec3::new(v.x / norm, v.y / norm, 0.0);
    Ok((t, t.cross(&e3())))
}

/// `g/G = ‖T − T_z γ‖ / z`.
pub fn speed_ratio(tt: &Vec3, gamma: &Vec3, z: f64) -> f64 {
    (tt - gamma * tt.z).norm() / z
}

/// Image curvature, cross-product form: `κ = −(G/g)² K N·(γ×t)/ρ`.
pub fn project_curvature(
    k: f64,
    nn: &Vec3,
    gamma: &Vec3,
    t: &Vec3,
    rho: f64,
    g_over_g: f64,
    tol: &Tolerances,
) -> Result<f64> {
    if g_over_g <= tol.reg {
        return Err(GeomError::StationaryImagePoint { speed: g_over_g });
    }
    Ok(-k * nn.dot(&gamma.cross(t)) / (rho * g_over_g * g_over_g))
}

/// Image curvature, normal form under `G ≡ 1`: `κ = K (N − N_z γ)·n / (ρ g²)`.
pub fn project_curvature_normal_form(k: f64, nn: &Vec3, gamma: &Vec3, n: &Vec3, rho: f64, g: f64) -> f64 {
    k * (nn - gamma * nn.z).dot(n) / (rho * g * g)
}

/// `dg/dS̃ = K N·(γ×n)/ρ − 2g T_z/ρ`, with `n = t × e₃`.
pub fn projected_speed_derivative(k: f64, nn: &Vec3, t_z: f64, gamma: &Vec3, t: &Vec3, rho: f64, g: f64) -> f64 {
    let n = t.cross(&e3());
    let value = (k * nn.dot(&gamma.cross(&n)) - 2.0 * g * t_z) / rho;
    debug_assert!(
        agree(
            value,
            projected_speed_derivative_tangent_form(k, nn, t_z, gamma, t, rho, g),
            (k * nn.norm() * gamma.norm() + 2.0 * (g * t_z).abs()) / rho
        ),
        "speed derivative forms disagree"
    );
    value
}

/// `dg/dS̃ = K (N − N_z γ)·t/ρ − 2g T_z/ρ`.
pub fn projected_speed_derivative_tangent_form(
    k: f64,
    nn: &Vec3,
    t_z: f64,
    gamma: &Vec3,
    t: &Vec3,
    rho: f64,
    g: f64,
) -> f64 {
    (k * (nn - gamma * nn.z).dot(t) - 2.0 * g * t_z) / rho
}

/// Image curvature derivative with respect to image arc length.
///
/// `κ̇ = −(K̇N + KτB)·(γ×t)/(ρg³) − 3κ(T_z/(ρg) + g′/g²)`, with `f` a
/// camera-frame frame under `G ≡ 1`, `g = g/G` and `g′ = dg/dS̃`.
#[allow(clippy::too_many_arguments)]
pub fn project_curvature_derivative(
    f: &Frenet3,
    gamma: &Vec3,
    t: &Vec3,
    rho: f64,
    g: f64,
    g_prime: f64,
    kappa: f64,
    tol: &Tolerances,
) -> Result<f64> {
    if g <= tol.reg {
        return Err(GeomError::StationaryImagePoint { speed: g });
    }
    let third = if f.has_normal {
        -f.tau_vector().dot(&gamma.cross(t)) / (rho * g * g * g)
    } else {
        0.0
    };
    Ok(third - 3.0 * kappa * (f.t.z / (rho * g) + g_prime / (g * g)))
}

/// Full projection of a camera-frame sample into normalized coordinates.
pub fn project_sample(sample: &SpaceCurveSample, tol: &Tolerances) -> Result<ImageCurveSample> {
    let mut p = project_with(&sample.point, tol)?;
    let f = sample.frame.unit_speed();
    let gamma = p.gamma;
    let rho = p.rho;
    let (t, n) = project_tangent(&f.t, &gamma, tol)?;
    let g = speed_ratio(&f.t, &gamma, rho);
    let (kappa, g_prime) = if f.has_normal {
        let kappa = project_curvature(f.k, &f.n, &gamma, &t, rho, g, tol)?;
        debug_assert!(
            agree(
                kappa,
                project_curvature_normal_form(f.k, &f.n, &gamma, &n, rho, g),
                f.k * gamma.norm() / (rho * g * g)
            ),
            "curvature forms disagree"
        );
        (kappa, projected_speed_derivative(f.k, &f.n, f.t.z, &gamma, &t, rho, g))
    } else {
        (0.0, -2.0 * g * f.t.z / rho)
    };
    let kappadot = project_curvature_derivative(&f, &gamma, &t, rho, g, g_prime, kappa, tol)?;
    p.rho_prime = Some(f.t.z);
    p.rho_second = Some(if f.has_normal { f.k * f.n.z } else { 0.0 });
    Ok(ImageCurveSample {
        point: p,
        frame2: Frenet2 {
            t,
            n,
            g,
            g_prime,
            kappa,
            kappadot,
        },
        coords: Coords::Normalized,
    })
}

/// Maps `{t, κ, κ̇}` through a linear map of the image plane, e.g. `K_im`.
///
/// Only the intrinsic fields of `f2` are read; the input is treated as unit
/// speed. The result carries `g = ‖m t‖` and `g_prime = g′` relative to that
/// unit speed. Pass `K_im⁻¹` with a pixel-space frame for the inverse.
pub fn intrinsics_transfer(f2: &Frenet2, m: &Mat3, tol: &Tolerances) -> Result<Frenet2> {
    let det = m.determinant();
    if !det.is_finite() || det.abs() <= tol.reg || m[(2, 0)] != 0.0 || m[(2, 1)] != 0.0 {
        return Err(GeomError::SingularIntrinsics);
    }
    let (t, n, kappa, kdot) = (f2.t, f2.n, f2.kappa, f2.kappadot);
    let mt = m * t;
    let mn = m * n;
    let g = mt.norm();
    let t_im = Vec3::new(mt.x / g, mt.y / g, 0.0);
    let n_im = t_im.cross(&e3());
    let g_prime = kappa * mt.dot(&mn) / g;
    let k_im = kappa * n_im.dot(&mn) / (g * g);
    let third = n_im.dot(&(m * (n * kdot - t * (kappa * kappa))));
    let kdot_im = third / (g * g * g) - 3.0 * g_prime * k_im / (g * g);
    Ok(Frenet2 {
        t: t_im,
        n: n_im,
        g,
        g_prime,
        kappa: k_im,
        kappadot: kdot_im,
    })
}
