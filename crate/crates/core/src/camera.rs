use crate::{is_rotation, Frenet3, GeomError, Mat3, Result, Tolerances, Vec3};

/// Pinhole intrinsics `[[αu, σ, u0], [0, αv, v0], [0, 0, 1]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intrinsics {
    pub alpha_u: f64,
    pub alpha_v: f64,
    pub skew: f64,
    pub u0: f64,
    pub v0: f64,
}

impl Intrinsics {
    pub fn identity() -> Intrinsics {
        Intrinsics {
            alpha_u: 1.0,
            alpha_v: 1.0,
            skew: 0.0,
            u0: 0.0,
            v0: 0.0,
        }
    }

    pub fn new(alpha_u: f64, alpha_v: f64, skew: f64, u0: f64, v0: f64) -> Result<Intrinsics> {
        let k = Intrinsics {
            alpha_u,
            alpha_v,
            skew,
            u0,
            v0,
        };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = [self.alpha_u, self.alpha_v, self.skew, self.u0, self.v0]
            .iter()
            .all(|v| v.is_finite());
        if !ok || self.alpha_u <= 0.0 || self.alpha_v <= 0.0 {
            return Err(GeomError::SingularIntrinsics);
        }
        Ok(())
    }

    pub fn matrix(&self) -> Mat3 {
        Mat3::new(
            self.alpha_u,
            self.skew,
            self.u0,
            0.0,
            self.alpha_v,
            self.v0,
            0.0,
            0.0,
            1.0,
        )
    }

    /// Closed-form inverse of the upper-triangular matrix.
    pub fn inverse_matrix(&self) -> Result<Mat3> {
        self.validate()?;
        let (au, av, s, u0, v0) = (self.alpha_u, self.alpha_v, self.skew, self.u0, self.v0);
        Ok(Mat3::new(
            1.0 / au,
            -s / (au * av),
            (s * v0 - av * u0) / (au * av),
            0.0,
            1.0 / av,
            -v0 / av,
            0.0,
            0.0,
            1.0,
        ))
    }
}

/// Extrinsics `Γ = R(Γʷ − c) = RΓʷ + t` plus intrinsics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraPose {
    /// World-to-camera rotation.
    pub r: Mat3,
    /// Camera center in world coordinates.
    pub c: Vec3,
    /// Translation `−Rc`.
    pub t: Vec3,
    pub k: Intrinsics,
}

impl CameraPose {
    pub fn new(r: Mat3, c: Vec3, k: Intrinsics) -> Result<CameraPose> {
        is_rotation(&r, 1e-12)?;
        k.validate()?;
        Ok(CameraPose { r, c, t: -(r * c), k })
    }

    pub fn identity() -> CameraPose {
        CameraPose {
            r: Mat3::identity(),
            c: Vec3::zeros(),
            t: Vec3::zeros(),
            k: Intrinsics::identity(),
        }
    }

    /// Optical axis `e₃` expressed in the world basis.
    pub fn axis(&self) -> Vec3 {
        self.r.row(2).transpose()
    }
}

/// Normalized image point with its depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImagePoint {
    /// `(u, v, 1)`.
    pub gamma: Vec3,
    pub rho: f64,
    pub rho_prime: Option<f64>,
    pub rho_second: Option<f64>,
}

impl ImagePoint {
    /// Camera-frame point `ργ`.
    pub fn lift(&self) -> Vec3 {
        self.gamma * self.rho
    }
}

pub fn world_to_camera(p: &Vec3, pose: &CameraPose) -> Vec3 {
    pose.r * p + pose.t
}

pub fn project(p_cam: &Vec3) -> Result<ImagePoint> {
    project_with(p_cam, &Tolerances::DEFAULT)
}

pub fn project_with(p_cam: &Vec3, tol: &Tolerances) -> Result<ImagePoint> {
    let z = p_cam.z;
    if z <= tol.depth || !z.is_finite() {
        return Err(GeomError::BehindCamera { depth: z });
    }
    Ok(ImagePoint {
        gamma: Vec3::new(p_cam.x / z, p_cam.y / z, 1.0),
        rho: z,
        rho_prime: None,
        rho_second: None,
    })
}

/// `(ρ, ρ′, ρ″)` for a camera-frame Frenet record at depth `z`.
pub fn depth_derivatives(f: &Frenet3, z: f64) -> (f64, f64, f64) {
    let rho_p = f.g * f.t.z;
    let rho_pp = f.g_prime * f.t.z + f.g * f.g * f.k * f.n.z;
    (z, rho_p, rho_pp)
}

pub fn to_pixel(gamma: &Vec3, k: &Intrinsics) -> Vec3 {
    k.matrix() * gamma
}

pub fn from_pixel(gamma_im: &Vec3, k: &Intrinsics) -> Result<Vec3> {
    Ok(k.inverse_matrix()? * gamma_im)
}
