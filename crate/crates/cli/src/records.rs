//! On-disk sample records. Ground truth rides along under `world`.

use mvg_core::{Frenet2, ImagePoint, Vec3};
use mvg_dataset::{CurveSample, RenderedSample};
use mvg_projection::{Coords, ImageCurveSample, SpaceCurveSample};
use serde::{Deserialize, Serialize};

/// Arc-length Frenet data of a world sample. Lines carry no normal,
/// binormal or torsion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldRecord {
    pub point: [f64; 3],
    #[serde(rename = "T")]
    pub t: [f64; 3],
    #[serde(rename = "N")]
    pub n: Option<[f64; 3]>,
    #[serde(rename = "B")]
    pub b: Option<[f64; 3]>,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "Kdot")]
    pub kdot: f64,
    pub tau: Option<f64>,
    /// Parametric speed `‖Γ′‖`.
    #[serde(rename = "G")]
    pub g: f64,
}

impl From<&SpaceCurveSample> for WorldRecord {
    fn from(s: &SpaceCurveSample) -> WorldRecord {
        let f = s.frame;
        let normal = f.has_normal;
        WorldRecord {
            point: s.point.into(),
            t: f.t.into(),
            n: normal.then(|| f.n.into()),
            b: normal.then(|| f.b.into()),
            k: f.k,
            kdot: f.kdot,
            tau: normal.then_some(f.tau),
            g: f.g,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub curve_id: usize,
    pub sample_id: usize,
    pub s: f64,
    pub world: WorldRecord,
}

impl From<&CurveSample> for SampleRecord {
    fn from(s: &CurveSample) -> SampleRecord {
        SampleRecord {
            curve_id: s.curve_id,
            sample_id: s.sample_id,
            s: s.s,
            world: (&s.sample).into(),
        }
    }
}

/// Pixel-space measurement of one sample in one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViewRecord {
    pub curve_id: usize,
    pub sample_id: usize,
    pub frame_id: usize,
    pub gamma: [f64; 2],
    pub t: [f64; 2],
    pub kappa: f64,
    pub kappa_dot: f64,
    pub depth: f64,
    pub world: WorldRecord,
}

impl From<&RenderedSample> for ViewRecord {
    fn from(r: &RenderedSample) -> ViewRecord {
        let (g, f) = (r.image.point.gamma, r.image.frame2);
        ViewRecord {
            curve_id: r.curve_id,
            sample_id: r.sample_id,
            frame_id: r.frame_id,
            gamma: [g.x, g.y],
            t: [f.t.x, f.t.y],
            kappa: f.kappa,
            kappa_dot: f.kappadot,
            depth: r.depth,
            world: (&r.world).into(),
        }
    }
}

impl ViewRecord {
    pub fn id(&self) -> (usize, usize) {
        (self.curve_id, self.sample_id)
    }

    /// The measurement alone, as a pixel-coordinate sample.
    pub fn image(&self) -> ImageCurveSample {
        ImageCurveSample {
            point: ImagePoint {
                gamma: Vec3::new(self.gamma[0], self.gamma[1], 1.0),
                rho: self.depth,
                rho_prime: None,
                rho_second: None,
            },
            frame2: Frenet2::from_tangent(Vec3::new(self.t[0], self.t[1], 0.0), self.kappa, self.kappa_dot),
            coords: Coords::Pixel,
        }
    }
}
