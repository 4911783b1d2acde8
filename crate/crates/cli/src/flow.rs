//! Closed-form flow relations against finite differences of the exact orbit.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Result};
use mvg_core::{Mat3, Tolerances, Vec3};
use mvg_dataset::Scene;
use mvg_motion::{
    contour_generator_velocity, curve_velocity_frenet, differential_epipolar_residual, fixed_point_flow, gamma_st,
    gamma_tt_frenet, image_acceleration, image_velocity, l1_residual, occluding_flow, occluding_gamma_tt, tangent_rate,
    CameraMotion, CurveMotionState, L1Input,
};

use crate::analytic::{camera, central1, central2, motion, richardson, GeneratorTrack, Observation};
use crate::io::{read_scene, read_view};
use crate::report::{rel, vrel, Profile, Report, ReportBuilder, SampleId};

pub const STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];
/// Step of the extrapolated differences feeding `β_t` and `t_t`. Near
/// epipolar tangency `β` turns fast, so plain five-point differences at
/// `1e−4` leave truncation errors above the L1 tolerance.
pub const RATE_STEP: f64 = 2e-5;
pub const GENERATOR_SAMPLES: usize = 16;

pub const L1_RIGID_LIMIT: f64 = 1e-8;
pub const L1_OCCLUDING_LIMIT: f64 = 1e-6;
/// Identities that hold up to rounding.
pub const IDENTITY_LIMIT: f64 = 1e-12;

const TOL: Tolerances = Tolerances::DEFAULT;

/// Largest error over samples, per quantity and step.
#[derive(Default)]
struct Orders(BTreeMap<&'static str, [f64; 3]>);

impl Orders {
    fn push(&mut self, name: &'static str, k: usize, err: f64) {
        let e = &mut self.0.entry(name).or_insert([0.0; 3])[k];
        // NaN must survive the max
        *e = if err.is_nan() || e.is_nan() {
            f64::NAN
        } else {
            e.max(err)
        };
    }
}

/// `δ·(V×γ)` scale of the differential epipolar residual.
fn epipolar_scale(g: &Vec3, gamma_t: &Vec3, m: &CameraMotion) -> f64 {
    (m.v.norm() * g.norm() * (gamma_t.norm() + m.omega.norm() * g.norm())).max(f64::MIN_POSITIVE)
}

/// Differential epipolar and L1 residuals of every curve sample at `frame`.
/// With `orders`, also the finite-difference comparisons of the flow.
fn rigid(scene: &Scene, frame: usize, b: &mut ReportBuilder, mut orders: Option<&mut Orders>) {
    let orbit = &scene.orbit;
    let t0 = orbit.frame_time(frame);
    let cam0 = camera(orbit, t0);
    let m = motion(&cam0);
    let mut dropped: f64 = 0.0;
    for c in &scene.curves {
        for i in 0..c.samples {
            let id = SampleId {
                curve_id: c.id,
                sample_id: i,
            };
            let p = c.evaluate_unchecked(c.parameter(i));
            let obs = |dt: f64| Observation::new(&camera(orbit, t0 + dt), &p.point, &Vec3::zeros(), &p.d1);
            let o = obs(0.0);
            let state = CurveMotionState::fixed(o.point());
            let flow = fixed_point_flow(&o.gamma, o.rho, &m);
            let f2 = o.frame(1.0);

            let res = differential_epipolar_residual(&o.gamma, &flow, &m);
            b.residual(
                "differential_epipolar",
                Some(id),
                res / epipolar_scale(&o.gamma, &flow, &m),
                IDENTITY_LIMIT,
            );

            let l1 = gamma_st(&state, &o.gamma_s, o.rho_s, &m, None).and_then(|gst| {
                let input = L1Input {
                    gamma: o.gamma,
                    t: f2.t,
                    gamma_t: flow,
                    t_t: tangent_rate(&gst, &f2, o.gamma_s.norm()),
                    rho: o.rho,
                    beta: flow.dot(&f2.n),
                    beta_t: richardson(|d| obs(d).beta(1.0), RATE_STEP),
                    e3_dot_gw_t: 0.0,
                };
                Ok((
                    l1_residual(&input, &m, &state.kind, true)?,
                    l1_residual(&input, &m, &state.kind, false)?,
                ))
            });
            match l1 {
                Ok((with, without)) => {
                    b.residual("l1_rigid", Some(id), with.normalized, L1_RIGID_LIMIT);
                    dropped = dropped.max(without.normalized.abs());
                }
                Err(e) => b.fail(format!("l1_rigid curve {} sample {i}: {e}", c.id)),
            }

            let Some(orders) = orders.as_deref_mut() else { continue };
            let (gamma_t, rho_t) = image_velocity(&state, &m);
            let (gamma_tt, _) = image_acceleration(&state, &m);
            let (alpha, beta) = curve_velocity_frenet(&state, &f2, &m, &Mat3::identity(), &Vec3::zeros());
            let (a_t, a_n) = gamma_tt_frenet(&state, &f2, &m, alpha, beta);
            for (k, &h) in STEPS.iter().enumerate() {
                let g1 = central1(|d| obs(d).gamma, h);
                let g2 = central2(|d| obs(d).gamma, h);
                orders.push("fixed_point_flow", k, vrel(&g1, &flow).1);
                orders.push("image_velocity", k, vrel(&g1, &gamma_t).1);
                orders.push("image_acceleration", k, vrel(&g2, &gamma_tt).1);
                orders.push("depth_rate", k, rel(central1(|d| obs(d).rho, h), rho_t).1);
                orders.push(
                    "frenet_velocity",
                    k,
                    rel(g1.dot(&f2.t), alpha).1.max(rel(g1.dot(&f2.n), beta).1),
                );
                orders.push(
                    "frenet_acceleration",
                    k,
                    rel(g2.dot(&f2.t), a_t).1.max(rel(g2.dot(&f2.n), a_n).1),
                );
            }
        }
    }
    b.info("l1_rigid_without_missing_term", dropped);
}

/// Contour generators of every quadric at `frame`.
fn occluding(scene: &Scene, frame: usize, b: &mut ReportBuilder, orders: &mut Orders) {
    let orbit = &scene.orbit;
    let t0 = orbit.frame_time(frame);
    let cam0 = camera(orbit, t0);
    let m = motion(&cam0);
    let mut without_depth: f64 = 0.0;
    for q in &scene.quadrics {
        for i in 0..GENERATOR_SAMPLES {
            let phi = std::f64::consts::TAU * i as f64 / GENERATOR_SAMPLES as f64;
            let label = format!("quadric {} sample {i}", q.id);
            let mut run = || -> Result<()> {
                let track = GeneratorTrack::new(q, orbit, t0, phi)?;
                let (x_t, o) = track.velocity_and_observation(0.0);
                let f2 = o.frame(track.sign);
                let gw_t = cam0.r * x_t;
                let kt = q.normal_curvature(&track.x0, &(track.x0 - cam0.c));
                let state = CurveMotionState::occluding(o.point(), kt, gw_t, Vec3::zeros())?;
                let (gamma_t, rho_t) = image_velocity(&state, &m);
                let fixed = fixed_point_flow(&o.gamma, o.rho, &m);
                b.residual("occluding_cancellation", None, vrel(&gamma_t, &fixed).1, IDENTITY_LIMIT);
                let slip = contour_generator_velocity(&o.gamma, o.rho, &m.v, &f2.t, kt, &TOL)?;
                b.residual("contour_generator_velocity", None, vrel(&slip, &gw_t).1, IDENTITY_LIMIT);

                let flow = occluding_flow(&o.gamma, o.rho, &m);
                let gamma_tt = occluding_gamma_tt(&state, &m, &gamma_t, rho_t)?;
                for (k, &h) in STEPS.iter().enumerate() {
                    orders.push(
                        "occluding_flow",
                        k,
                        vrel(&central1(|d| track.observe(d).gamma, h), &flow).1,
                    );
                    orders.push(
                        "occluding_gamma_tt",
                        k,
                        vrel(&central2(|d| track.observe(d).gamma, h), &gamma_tt).1,
                    );
                }

                let input = L1Input {
                    gamma: o.gamma,
                    t: f2.t,
                    gamma_t,
                    t_t: richardson(|d| track.observe(d).frame(track.sign).t, RATE_STEP),
                    rho: o.rho,
                    beta: gamma_t.dot(&f2.n),
                    beta_t: richardson(|d| track.observe(d).beta(track.sign), RATE_STEP),
                    e3_dot_gw_t: gw_t.z,
                };
                let r = l1_residual(&input, &m, &state.kind, true)?;
                b.residual("l1_occluding", None, r.normalized, L1_OCCLUDING_LIMIT);
                let rigid = L1Input {
                    e3_dot_gw_t: 0.0,
                    ..input
                };
                without_depth = without_depth.max(l1_residual(&rigid, &m, &state.kind, true)?.normalized.abs());
                Ok(())
            };
            if let Err(e) = run() {
                b.fail(format!("{label}: {e}"));
            }
        }
    }
    if !scene.quadrics.is_empty() {
        b.info("l1_occluding_without_depth_term", without_depth);
    }
}

/// Residuals shared with `verify`: differential epipolar and rigid L1 at one frame.
pub fn rigid_residuals(scene: &Scene, frame: usize, b: &mut ReportBuilder) {
    rigid(scene, frame, b, None);
}

/// Centered difference of the stored pixel positions at `frame ± 1` against
/// the closed-form pixel flow. The frame spacing is coarse, so this is
/// reported for context only.
fn frame_difference(dir: &Path, scene: &Scene, frame: usize, b: &mut ReportBuilder) -> Result<()> {
    let n = scene.orbit.frames;
    let prev = read_view(dir, (frame + n - 1) % n, n)?;
    let next = read_view(dir, (frame + 1) % n, n)?;
    let cur = read_view(dir, frame, n)?;
    let index = |v: &[crate::records::ViewRecord]| -> BTreeMap<(usize, usize), [f64; 2]> {
        v.iter().map(|r| (r.id(), r.gamma)).collect()
    };
    let (prev, next) = (index(&prev), index(&next));
    let cam0 = camera(&scene.orbit, scene.orbit.frame_time(frame));
    let m = motion(&cam0);
    let k = scene.orbit.image.intrinsics()?.matrix();
    let dt = 1.0 / n as f64;
    let mut worst: f64 = 0.0;
    for r in &cur {
        let (Some(a), Some(z)) = (prev.get(&r.id()), next.get(&r.id())) else {
            continue;
        };
        let Some(c) = scene.curve(r.curve_id) else { continue };
        let p = c.evaluate_unchecked(c.parameter(r.sample_id));
        let o = Observation::new(&cam0, &p.point, &Vec3::zeros(), &p.d1);
        let want = k * fixed_point_flow(&o.gamma, o.rho, &m);
        let got = Vec3::new(z[0] - a[0], z[1] - a[1], 0.0) / (2.0 * dt);
        worst = worst.max(vrel(&got, &want).1);
    }
    b.info("frame_difference_max_rel", worst);
    Ok(())
}

pub fn flow(dir: &Path, frame: usize, profile: Profile) -> Result<Report> {
    let scene = read_scene(dir)?;
    let frames = scene.orbit.frames;
    if frames < 3 {
        bail!("flow needs at least 3 frames for centered differences; the dataset has {frames}");
    }
    if frame >= frames {
        bail!("frame {frame} out of range: dataset has {frames} frames");
    }
    let mut b = ReportBuilder::new("flow", profile);
    b.report.frame = Some(frame);
    frame_difference(dir, &scene, frame, &mut b)?;
    let mut orders = Orders::default();
    rigid(&scene, frame, &mut b, Some(&mut orders));
    occluding(&scene, frame, &mut b, &mut orders);
    let limit = profile.tolerance();
    for (name, errors) in orders.0 {
        b.convergence(name, &STEPS, errors.to_vec(), 2.0, limit);
    }
    Ok(b.finish())
}
