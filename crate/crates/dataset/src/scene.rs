use std::collections::BTreeSet;
use std::f64::consts::PI;

use mvg_core::CameraPose;
use serde::{Deserialize, Serialize};

use crate::{camera_orbit, AnalyticCurve, CurveFamily, DatasetError, ImageFormat, Orbit, Quadric, QuadricKind, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub curves: Vec<AnalyticCurve>,
    #[serde(default)]
    pub quadrics: Vec<Quadric>,
    pub orbit: Orbit,
}

impl Scene {
    pub fn validate(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        for c in &self.curves {
            c.validate()?;
            if !ids.insert(c.id) {
                return Err(DatasetError::InvalidScene(format!("duplicate curve id {}", c.id)));
            }
        }
        let mut ids = BTreeSet::new();
        for q in &self.quadrics {
            q.validate()?;
            if !ids.insert(q.id) {
                return Err(DatasetError::InvalidScene(format!("duplicate quadric id {}", q.id)));
            }
        }
        self.orbit.validate()?;
        for pose in camera_orbit(&self.orbit)? {
            if self.quadrics.iter().any(|q| q.generator_point(&pose.c, 0.0).is_err()) {
                return Err(DatasetError::CameraInsideQuadric);
            }
        }
        Ok(())
    }

    pub fn poses(&self) -> Result<Vec<CameraPose>> {
        camera_orbit(&self.orbit)
    }

    pub fn curve(&self, id: usize) -> Option<&AnalyticCurve> {
        self.curves.iter().find(|c| c.id == id)
    }
}

impl Default for Scene {
    /// One curve of each family inside a ball of radius 2.3 around the
    /// origin, seen by 20 cameras on a radius-10 orbit raised by 4. Every
    /// sample stays inside the 500×400 image of every frame.
    fn default() -> Scene {
        let curve = |id, family, range, offset, rotation| AnalyticCurve {
            id,
            family,
            range,
            samples: 100,
            offset,
            rotation,
        };
        Scene {
            curves: vec![
                curve(
                    0,
                    CurveFamily::Helix { a: 0.5, b: 0.12 },
                    [0.0, 4.0 * PI],
                    [-0.9, -0.8, -0.75],
                    [0.2, -0.1, 0.0],
                ),
                curve(
                    1,
                    CurveFamily::Parabola { a: 0.8 },
                    [-1.0, 1.0],
                    [0.9, 0.9, 0.3],
                    [0.5, 0.3, 0.2],
                ),
                curve(
                    2,
                    CurveFamily::Ellipse { a: 1.1, b: 0.6 },
                    [0.0, 6.2],
                    [0.0, 0.2, 1.1],
                    [0.35, 0.0, 0.4],
                ),
                curve(
                    3,
                    CurveFamily::Line {
                        direction: [0.3, 0.6, 0.74],
                    },
                    [-1.0, 1.0],
                    [1.0, -0.9, -0.4],
                    [0.0; 3],
                ),
                curve(
                    4,
                    CurveFamily::Saddle { a: 0.8, b: 0.6, c: 0.3 },
                    [0.0, 6.2],
                    [-0.8, 1.0, -0.2],
                    [0.0, 0.3, 0.0],
                ),
            ],
            quadrics: vec![
                Quadric::sphere(0, [0.0, 0.0, 0.0].into(), 0.6),
                Quadric {
                    id: 1,
                    kind: QuadricKind::Ellipsoid,
                    center: [0.6, -0.5, 0.4],
                    semi_axes: [0.5, 0.35, 0.7],
                },
            ],
            orbit: Orbit {
                center: [0.0; 3],
                radius: 10.0,
                axis: [0.0, 0.0, 1.0],
                elevation: 4.0,
                frames: 20,
                image: ImageFormat {
                    alpha_u: 500.0,
                    alpha_v: 500.0,
                    skew: 0.0,
                    u0: 250.0,
                    v0: 200.0,
                    width: 500.0,
                    height: 400.0,
                },
            },
        }
    }
}
