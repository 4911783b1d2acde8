use mvg_core::{frenet3_from_derivatives, rot_axis, Frenet3, GeomError, Vec3};
use mvg_projection::{FrameId, SpaceCurveSample};
use serde::{Deserialize, Serialize};

use crate::{DatasetError, Result};

/// Local parametric forms, before placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveFamily {
    /// `(a cos s, a sin s, b s)`.
    Helix { a: f64, b: f64 },
    /// `(s, a s², 0)`.
    Parabola { a: f64 },
    /// `(a cos s, b sin s, 0)`.
    Ellipse { a: f64, b: f64 },
    /// `s d`.
    Line { direction: [f64; 3] },
    /// `(a cos s, b sin s, c cos 2s)`, which lies on `z = c(x²/a² − y²/b²)`.
    Saddle { a: f64, b: f64, c: f64 },
}

impl CurveFamily {
    pub fn name(&self) -> &'static str {
        match self {
            CurveFamily::Helix { .. } => "helix",
            CurveFamily::Parabola { .. } => "parabola",
            CurveFamily::Ellipse { .. } => "ellipse",
            CurveFamily::Line { .. } => "line",
            CurveFamily::Saddle { .. } => "saddle",
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(
            self,
            CurveFamily::Parabola { .. } | CurveFamily::Ellipse { .. } | CurveFamily::Line { .. }
        )
    }

    /// `(Γ, Γ′, Γ″, Γ‴)` in local coordinates.
    fn local(&self, s: f64) -> [Vec3; 4] {
        let (sn, cs) = s.sin_cos();
        match *self {
            CurveFamily::Helix { a, b } => [
                Vec3::new(a * cs, a * sn, b * s),
                Vec3::new(-a * sn, a * cs, b),
                Vec3::new(-a * cs, -a * sn, 0.0),
                Vec3::new(a * sn, -a * cs, 0.0),
            ],
            CurveFamily::Parabola { a } => [
                Vec3::new(s, a * s * s, 0.0),
                Vec3::new(1.0, 2.0 * a * s, 0.0),
                Vec3::new(0.0, 2.0 * a, 0.0),
                Vec3::zeros(),
            ],
            CurveFamily::Ellipse { a, b } => [
                Vec3::new(a * cs, b * sn, 0.0),
                Vec3::new(-a * sn, b * cs, 0.0),
                Vec3::new(-a * cs, -b * sn, 0.0),
                Vec3::new(a * sn, -b * cs, 0.0),
            ],
            CurveFamily::Line { direction } => {
                let d = Vec3::from(direction);
                [d * s, d, Vec3::zeros(), Vec3::zeros()]
            }
            CurveFamily::Saddle { a, b, c } => {
                let (s2, c2) = (2.0 * s).sin_cos();
                [
                    Vec3::new(a * cs, b * sn, c * c2),
                    Vec3::new(-a * sn, b * cs, -2.0 * c * s2),
                    Vec3::new(-a * cs, -b * sn, -4.0 * c * c2),
                    Vec3::new(a * sn, -b * cs, 8.0 * c * s2),
                ]
            }
        }
    }
}

/// A curve family placed in the world by `Γʷ = R(rotation) Γ + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticCurve {
    pub id: usize,
    #[serde(flatten)]
    pub family: CurveFamily,
    pub range: [f64; 2],
    pub samples: usize,
    #[serde(default)]
    pub offset: [f64; 3],
    /// Axis-angle vector.
    #[serde(default)]
    pub rotation: [f64; 3],
}

/// Point and parameter derivatives of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub point: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub curve_id: usize,
    pub sample_id: usize,
    pub s: f64,
    pub sample: SpaceCurveSample,
}

impl AnalyticCurve {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(DatasetError::InvalidCurve {
                id: self.id,
                reason: reason.to_string(),
            })
        };
        let [s0, s1] = self.range;
        if !(s0.is_finite() && s1.is_finite() && s1 > s0) {
            return bad("parameter range is empty");
        }
        if self.samples == 0 {
            return bad("sample count is zero");
        }
        if !self.offset.iter().chain(&self.rotation).all(|v| v.is_finite()) {
            return bad("placement is not finite");
        }
        let ok = match self.family {
            CurveFamily::Helix { a, b } => a > 0.0 && b.is_finite(),
            CurveFamily::Parabola { a } => a.is_finite(),
            CurveFamily::Ellipse { a, b } => a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite(),
            CurveFamily::Line { direction } => {
                let d = Vec3::from(direction);
                d.norm() > 0.0 && d.norm().is_finite()
            }
            CurveFamily::Saddle { a, b, c } => a > 0.0 && b > 0.0 && c.is_finite() && a.is_finite() && b.is_finite(),
        };
        if !ok {
            return bad("family parameters give a non-regular curve");
        }
        Ok(())
    }

    pub fn evaluate(&self, s: f64) -> Result<CurvePoint> {
        let [s0, s1] = self.range;
        if !(s0..=s1).contains(&s) {
            return Err(DatasetError::OutOfRange { s, s0, s1 });
        }
        Ok(self.evaluate_unchecked(s))
    }

    /// Same as [`evaluate`](Self::evaluate) without the range check, for
    /// finite-difference stencils that step past an endpoint.
    pub fn evaluate_unchecked(&self, s: f64) -> CurvePoint {
        let r = rot_axis(&Vec3::from(self.rotation));
        let [p, d1, d2, d3] = self.family.local(s);
        CurvePoint {
            point: r * p + Vec3::from(self.offset),
            d1: r * d1,
            d2: r * d2,
            d3: r * d3,
        }
    }

    /// Parameter of sample `i`, uniform over the range.
    pub fn parameter(&self, i: usize) -> f64 {
        let [s0, s1] = self.range;
        if self.samples == 1 {
            return s0;
        }
        let u = i as f64 / (self.samples - 1) as f64;
        if i + 1 == self.samples {
            s1
        } else {
            s0 + (s1 - s0) * u
        }
    }
}

/// Frenet data at a curve point; lines give a record without a normal.
pub fn frenet_at(p: &CurvePoint) -> Result<Frenet3> {
    match frenet3_from_derivatives(&p.d1, &p.d2, &p.d3) {
        Ok(f) => Ok(f),
        Err(GeomError::ZeroCurvature { speed, tangent, .. }) => Ok(Frenet3::line(speed, tangent)),
        Err(e) => Err(e.into()),
    }
}

/// World-frame samples with full Frenet data, ordered by sample id.
pub fn sample_curve(curve: &AnalyticCurve) -> Result<Vec<CurveSample>> {
    curve.validate()?;
    (0..curve.samples)
        .map(|i| {
            let s = curve.parameter(i);
            let p = curve.evaluate(s)?;
            Ok(CurveSample {
                curve_id: curve.id,
                sample_id: i,
                s,
                sample: SpaceCurveSample {
                    point: p.point,
                    frame: frenet_at(&p)?,
                    frame_id: FrameId::World,
                },
            })
        })
        .collect()
}
