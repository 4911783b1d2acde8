//! Projection round trips, two-view reconstruction and third-view transfer
//! on a generated dataset.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Result};
use mvg_core::{frenet2_from_derivatives, CameraPose, GeomError, Tolerances, Vec3};
use mvg_dataset::{CurveFamily, Scene};
use mvg_reconstruction::{lift_measurement, reconstruct, transfer_to_view};

use crate::flow::rigid_residuals;
use crate::io::{read_samples, read_scene, read_view};
use crate::records::ViewRecord;
use crate::report::{rel, vrel, Profile, Report, ReportBuilder, SampleId};

const TOL: Tolerances = Tolerances::DEFAULT;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub views: Vec<usize>,
    pub profile: Profile,
    pub strict_degenerate: bool,
}

/// Skip counter for a degenerate configuration, `None` for real failures.
fn degenerate(e: &GeomError) -> Option<&'static str> {
    match e {
        GeomError::EpipolarTangency | GeomError::EpipolarDegenerate => Some("epipolar_tangency"),
        GeomError::ZeroCurvature { .. } => Some("zero_curvature"),
        GeomError::StationaryImagePoint { .. } | GeomError::TangentAlongRay => Some("stationary_image_point"),
        _ => None,
    }
}

fn id(r: &ViewRecord) -> SampleId {
    SampleId {
        curve_id: r.curve_id,
        sample_id: r.sample_id,
    }
}

struct Verifier<'a> {
    scene: &'a Scene,
    poses: Vec<CameraPose>,
    b: ReportBuilder,
    strict: bool,
}

impl Verifier<'_> {
    fn skip(&mut self, reason: &str, what: &str, id: SampleId) {
        self.b.skip(reason);
        if self.strict {
            self.b.fail(format!(
                "{what} curve {} sample {}: {reason}",
                id.curve_id, id.sample_id
            ));
        }
    }

    fn family(&self, curve_id: usize) -> Option<&CurveFamily> {
        self.scene.curve(curve_id).map(|c| &c.family)
    }

    /// Stored pixel measurements against the Frenet frame of the analytically
    /// projected curve, differentiated by the chain rule.
    fn projection(&mut self, frame: usize, records: &[ViewRecord]) {
        let pose = self.poses[frame];
        let k = pose.k.matrix();
        for r in records {
            let Some(c) = self.scene.curve(r.curve_id) else {
                self.b.fail(format!("frame {frame}: unknown curve {}", r.curve_id));
                continue;
            };
            let p = c.evaluate_unchecked(c.parameter(r.sample_id));
            let [x, x1, x2, x3] = [p.point - pose.c, p.d1, p.d2, p.d3].map(|v| pose.r * v);
            let q = x / x.z;
            let q1 = (x1 - q * x1.z) / x.z;
            let q2 = (x2 - q1 * (2.0 * x1.z) - q * x2.z) / x.z;
            let q3 = (x3 - q2 * (3.0 * x1.z) - q1 * (3.0 * x2.z) - q * x3.z) / x.z;
            let flat = |v: Vec3| {
                let w = k * v;
                Vec3::new(w.x, w.y, 0.0)
            };
            let want = match frenet2_from_derivatives(&flat(q1), &flat(q2), &flat(q3)) {
                Ok(f) => f,
                Err(e) => {
                    match degenerate(&e) {
                        Some(reason) => self.skip(reason, "projection", id(r)),
                        None => self
                            .b
                            .fail(format!("projection curve {} sample {}: {e}", r.curve_id, r.sample_id)),
                    }
                    continue;
                }
            };
            let got = r.image();
            let px = k * q;
            let sid = id(r);
            self.b.quantity(
                "projection_gamma",
                sid,
                vrel(&got.point.gamma, &Vec3::new(px.x, px.y, 1.0)),
                false,
            );
            self.b
                .quantity("projection_t", sid, vrel(&got.frame2.t, &want.t), false);
            self.b
                .quantity("projection_n", sid, vrel(&got.frame2.n, &want.n), false);
            self.b
                .quantity("projection_kappa", sid, rel(got.frame2.kappa, want.kappa), false);
            self.b.quantity(
                "projection_kappadot",
                sid,
                rel(got.frame2.kappadot, want.kappadot),
                false,
            );
        }
    }

    fn record(&mut self, name: &str, family: &str, sid: SampleId, err: (f64, f64)) {
        self.b.quantity(name, sid, err, true);
        self.b.family(family, name, sid, err);
    }

    fn reconstruction(
        &mut self,
        (i, a): (usize, &[ViewRecord]),
        (j, z): (usize, &[ViewRecord]),
        third: Option<(usize, &[ViewRecord])>,
    ) {
        let by_id = |v: &[ViewRecord]| -> BTreeMap<(usize, usize), ViewRecord> {
            v.iter().map(|r| (r.id(), r.clone())).collect()
        };
        let second = by_id(z);
        let third = third.map(|(k, v)| (k, by_id(v)));
        let tol = self.b.report.tolerance;
        for r1 in a {
            let Some(r2) = second.get(&r1.id()) else { continue };
            let sid = id(r1);
            let Some(family) = self.family(r1.curve_id).cloned() else {
                self.b.fail(format!("unknown curve {}", r1.curve_id));
                continue;
            };
            let name = family.name();
            let lifted = lift_measurement(&r1.image(), &self.poses[i])
                .and_then(|m1| Ok((m1, lift_measurement(&r2.image(), &self.poses[j])?)));
            let (m1, m2) = match lifted {
                Ok(m) => m,
                Err(e) => {
                    self.b
                        .fail(format!("lift curve {} sample {}: {e}", sid.curve_id, sid.sample_id));
                    continue;
                }
            };
            let rec = match reconstruct(&m1, &m2, &TOL) {
                Ok(rec) => rec,
                Err(e) => {
                    match degenerate(&e) {
                        Some(reason) => self.skip(reason, "reconstruction", sid),
                        None => self.b.fail(format!(
                            "reconstruction curve {} sample {}: {e}",
                            sid.curve_id, sid.sample_id
                        )),
                    }
                    continue;
                }
            };
            let w = &r1.world;
            let f = rec.frame;
            self.record("point", name, sid, vrel(&rec.point, &Vec3::from(w.point)));
            self.record("T", name, sid, vrel(&f.t, &Vec3::from(w.t)));
            match (w.n, w.tau) {
                (Some(n), Some(tau)) if f.has_normal => {
                    self.record("N", name, sid, vrel(&f.n, &Vec3::from(n)));
                    self.record("K", name, sid, rel(f.k, w.k));
                    self.record("tau", name, sid, rel(f.tau, tau));
                    self.record("Kdot", name, sid, rel(f.kdot, w.kdot));
                    if family.is_planar() {
                        self.b.residual("planar_torsion", Some(sid), f.tau, tol);
                    }
                    if let CurveFamily::Helix { a, b } = family {
                        self.b
                            .residual("helix_torsion", Some(sid), rel(f.tau, b / (a * a + b * b)).1, tol);
                    }
                }
                (Some(_), _) => self.b.fail(format!(
                    "curve {} sample {}: reconstructed a line where the curve bends",
                    sid.curve_id, sid.sample_id
                )),
                _ => self.skip("zero_curvature", "reconstruction", sid),
            }
            if let Some((k, third)) = &third {
                if let Some(r3) = third.get(&r1.id()) {
                    self.transfer(&m1, &m2, *k, r3);
                }
            }
        }
    }

    fn transfer(
        &mut self,
        m1: &mvg_reconstruction::ViewMeasurement,
        m2: &mvg_reconstruction::ViewMeasurement,
        k: usize,
        r3: &ViewRecord,
    ) {
        let sid = id(r3);
        let pose = self.poses[k];
        let got = match transfer_to_view(m1, m2, &pose, &TOL) {
            Ok(s) => s,
            Err(e) => {
                match degenerate(&e) {
                    Some(reason) => self.skip(reason, "transfer", sid),
                    None => self
                        .b
                        .fail(format!("transfer curve {} sample {}: {e}", sid.curve_id, sid.sample_id)),
                }
                return;
            }
        };
        // the stored measurement, normalized and in the camera frame
        let m3 = match lift_measurement(&r3.image(), &pose) {
            Ok(m) => m,
            Err(e) => {
                self.b
                    .fail(format!("lift curve {} sample {}: {e}", sid.curve_id, sid.sample_id));
                return;
            }
        };
        let (gamma, t) = (pose.r * m3.gamma, pose.r * m3.t);
        self.b
            .quantity("transfer_gamma", sid, vrel(&got.point.gamma, &gamma), false);
        self.b.quantity("transfer_t", sid, vrel(&got.frame2.t, &t), false);
        self.b
            .quantity("transfer_kappa", sid, rel(got.frame2.kappa, m3.kappa), false);
        self.b
            .quantity("transfer_kappadot", sid, rel(got.frame2.kappadot, m3.kappadot), false);
    }
}

pub fn verify(dir: &Path, opts: &VerifyOptions) -> Result<Report> {
    if !(2..=3).contains(&opts.views.len()) {
        bail!("--views takes two or three frame numbers, got {}", opts.views.len());
    }
    if opts.views[0] == opts.views[1] {
        bail!("--views needs two distinct frames");
    }
    let scene = read_scene(dir)?;
    let frames = scene.orbit.frames;
    if let Some(v) = opts.views.iter().find(|&&v| v >= frames) {
        bail!("view {v} out of range: dataset has {frames} frames");
    }
    let total = read_samples(dir)?.len();
    let mut views = Vec::with_capacity(frames);
    for f in 0..frames {
        views.push(read_view(dir, f, frames)?);
    }
    let mut v = Verifier {
        scene: &scene,
        poses: scene.poses()?,
        b: ReportBuilder::new("verify", opts.profile),
        strict: opts.strict_degenerate,
    };
    v.b.report.views = opts.views.clone();
    for (f, records) in views.iter().enumerate() {
        v.b.report.dropped.push(total.saturating_sub(records.len()));
        v.projection(f, records);
    }
    let (i, j) = (opts.views[0], opts.views[1]);
    let third = opts.views.get(2).map(|&k| (k, views[k].as_slice()));
    v.reconstruction((i, &views[i]), (j, &views[j]), third);
    rigid_residuals(&scene, i, &mut v.b);
    Ok(v.b.finish())
}
