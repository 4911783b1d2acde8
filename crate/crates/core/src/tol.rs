/// Thresholds shared by every crate in the workspace.
///
/// `Tolerances::default()` gives the library-wide values. Pass a modified copy
/// to override per call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Minimum speed of a regular curve.
    pub reg: f64,
    /// Curvature below which the normal is undefined.
    pub curvature: f64,
    /// Minimum depth in front of the camera.
    pub depth: f64,
    /// Normalized coplanarity residual accepted by triangulation.
    pub coplanar: f64,
    /// Minimum Gram determinant of two rays.
    pub parallel: f64,
    /// Minimum norm of the epipolar plane intersection.
    pub epi: f64,
    /// Largest accepted condition estimate of a 3x3 system.
    pub cond: f64,
    /// Largest symmetric part accepted when extracting angular velocity.
    pub skew: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        reg: 1e-10,
        curvature: 1e-10,
        depth: 1e-9,
        coplanar: 1e-8,
        parallel: 1e-12,
        epi: 1e-10,
        cond: 1e12,
        skew: 1e-6,
    };
}
