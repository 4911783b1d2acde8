use crate::{e3, GeomError, Mat3, Result, Tolerances, Vec3};

/// Frenet data of a space curve at one point.
///
/// Derivatives marked `_prime` are with respect to the curve parameter;
/// `kdot` is with respect to arc length. For straight lines (`K = 0`) the
/// normal and binormal are meaningless and `has_normal` is false.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frenet3 {
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
    /// Speed `‖Γ′‖`.
    pub g: f64,
    /// Speed derivative `G′ = Γ″·T`.
    pub g_prime: f64,
    pub k: f64,
    pub kdot: f64,
    pub tau: f64,
    pub has_normal: bool,
}

impl Frenet3 {
    /// Ground-truth record for a straight segment.
    pub fn line(g: f64, t: Vec3) -> Frenet3 {
        Frenet3 {
            t,
            n: Vec3::zeros(),
            b: Vec3::zeros(),
            g,
            g_prime: 0.0,
            k: 0.0,
            kdot: 0.0,
            tau: 0.0,
            has_normal: false,
        }
    }

    /// Same geometry reparametrized by arc length.
    pub fn unit_speed(&self) -> Frenet3 {
        Frenet3 {
            g: 1.0,
            g_prime: 0.0,
            ..*self
        }
    }

    /// Frame expressed in another basis, e.g. world to camera.
    pub fn rotated(&self, r: &Mat3) -> Frenet3 {
        Frenet3 {
            t: r * self.t,
            n: r * self.n,
            b: r * self.b,
            ..*self
        }
    }

    /// `K̇N + KτB`, the part of the third derivative not along `T`.
    pub fn tau_vector(&self) -> Vec3 {
        self.n * self.kdot + self.b * (self.k * self.tau)
    }
}

/// Frenet data of an image curve; vectors have zero third component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frenet2 {
    pub t: Vec3,
    /// Always `t × e₃`.
    pub n: Vec3,
    pub g: f64,
    pub g_prime: f64,
    pub kappa: f64,
    /// Curvature derivative with respect to image arc length.
    pub kappadot: f64,
}

impl Frenet2 {
    /// Builds the frame from intrinsic data, with `n = t × e₃`.
    pub fn from_tangent(t: Vec3, kappa: f64, kappadot: f64) -> Frenet2 {
        let t = Vec3::new(t.x, t.y, 0.0).normalize();
        Frenet2 {
            t,
            n: t.cross(&e3()),
            g: 1.0,
            g_prime: 0.0,
            kappa,
            kappadot,
        }
    }
}

/// Frenet frame of a space curve from its first three parameter derivatives.
///
/// Uses `Γ‴ = (G″ − G³K²)T + (3GG′K + G³K̇)N + G³Kτ B`.
pub fn frenet3_from_derivatives(d1: &Vec3, d2: &Vec3, d3: &Vec3) -> Result<Frenet3> {
    frenet3_with(d1, d2, d3, &Tolerances::DEFAULT)
}

pub fn frenet3_with(d1: &Vec3, d2: &Vec3, d3: &Vec3, tol: &Tolerances) -> Result<Frenet3> {
    let g = d1.norm();
    if g <= tol.reg || !g.is_finite() {
        return Err(GeomError::NonRegular { speed: g });
    }
    let t = d1 / g;
    let g3 = g * g * g;
    let k = d1.cross(d2).norm() / g3;
    if k <= tol.curvature {
        return Err(GeomError::ZeroCurvature {
            curvature: k,
            speed: g,
            tangent: t,
        });
    }
    let g_prime = d2.dot(&t);
    let n = (d2 - t * g_prime).normalize();
    let b = t.cross(&n);
    let kdot = (d3.dot(&n) - 3.0 * g * g_prime * k) / g3;
    let tau = d3.dot(&b) / (g3 * k);
    Ok(Frenet3 {
        t,
        n,
        b,
        g,
        g_prime,
        k,
        kdot,
        tau,
        has_normal: true,
    })
}

/// Frenet frame of an image curve from derivatives lying in the image plane.
pub fn frenet2_from_derivatives(d1: &Vec3, d2: &Vec3, d3: &Vec3) -> Result<Frenet2> {
    frenet2_with(d1, d2, d3, &Tolerances::DEFAULT)
}

pub fn frenet2_with(d1: &Vec3, d2: &Vec3, d3: &Vec3, tol: &Tolerances) -> Result<Frenet2> {
    for d in [d1, d2, d3] {
        if d.z != 0.0 {
            return Err(GeomError::NotInImagePlane { z: d.z });
        }
    }
    let g = d1.norm();
    if g <= tol.reg || !g.is_finite() {
        return Err(GeomError::NonRegular { speed: g });
    }
    let t = d1 / g;
    let n = t.cross(&e3());
    let g_prime = d2.dot(&t);
    let kappa = d2.dot(&n) / (g * g);
    let kappadot = (d3.dot(&n) - 3.0 * g * g_prime * kappa) / (g * g * g);
    Ok(Frenet2 {
        t,
        n,
        g,
        g_prime,
        kappa,
        kappadot,
    })
}
