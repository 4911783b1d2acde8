//! Synthetic world with exact ground truth: analytic curves with closed-form
//! derivatives to third order, camera orbits, pixel renderings with
//! correspondence ids, and contour generators of spheres and ellipsoids.

mod correspond;
mod curve;
mod error;
mod orbit;
mod quadric;
mod render;
mod scene;

pub use correspond::{epipolar_correspond, EpipolarMatch, EPIPOLAR_ANGLE_TOL};
pub use curve::{frenet_at, sample_curve, AnalyticCurve, CurveFamily, CurvePoint, CurveSample};
pub use error::DatasetError;
pub use orbit::{camera_orbit, look_at, perpendicular_basis, CameraState, ImageFormat, Orbit};
pub use quadric::{quadric_contour_generator, track_generator, GeneratorSample, Quadric, QuadricKind};
pub use render::{render_view, RenderedSample, RenderedView};
pub use scene::Scene;

pub type Result<T> = std::result::Result<T, DatasetError>;

/// Samples of every curve in scene order.
pub fn sample_scene(scene: &Scene) -> Result<Vec<CurveSample>> {
    let mut out = Vec::new();
    for c in &scene.curves {
        out.extend(sample_curve(c)?);
    }
    Ok(out)
}
