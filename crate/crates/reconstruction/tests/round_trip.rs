//! Project analytic curves into two views, reconstruct, and compare with the
//! closed-form Frenet data.

use approx::assert_relative_eq;
use mvg_core::{
    frenet3_from_derivatives, rot_axis, CameraPose, Frenet3, GeomError, Intrinsics, Mat3, Tolerances, Vec3,
};
use mvg_projection::{intrinsics_transfer, project_sample, Coords, FrameId, ImageCurveSample, SpaceCurveSample};
use mvg_reconstruction::{
    depth_speed_relations, lift_measurement, plane_separation, reconstruct, reconstruct_curvature, reconstruct_tangent,
    transfer_to_view, triangulate, two_view_speed_ratio, view_speed, ViewMeasurement,
};
use proptest::prelude::*;

const TOL: Tolerances = Tolerances::DEFAULT;

type Curve = fn(f64) -> [Vec3; 4];

fn helix(s: f64) -> [Vec3; 4] {
    let (sn, cs) = s.sin_cos();
    [
        Vec3::new(cs, sn, s),
        Vec3::new(-sn, cs, 1.0),
        Vec3::new(-cs, -sn, 0.0),
        Vec3::new(sn, -cs, 0.0),
    ]
}

fn saddle(s: f64) -> [Vec3; 4] {
    let (a, c) = (1.2, 0.4);
    let (sn, cs) = s.sin_cos();
    let (s2, c2) = (2.0 * s).sin_cos();
    [
        Vec3::new(a * cs, a * sn, c * c2),
        Vec3::new(-a * sn, a * cs, -2.0 * c * s2),
        Vec3::new(-a * cs, -a * sn, -4.0 * c * c2),
        Vec3::new(a * sn, -a * cs, 8.0 * c * s2),
    ]
}

fn ellipse(s: f64) -> [Vec3; 4] {
    let r = rot_axis(&Vec3::new(0.4, -0.2, 0.3));
    let (sn, cs) = s.sin_cos();
    let (a, b) = (1.5, 0.8);
    [
        r * Vec3::new(a * cs, b * sn, 0.0),
        r * Vec3::new(-a * sn, b * cs, 0.0),
        r * Vec3::new(-a * cs, -b * sn, 0.0),
        r * Vec3::new(a * sn, -b * cs, 0.0),
    ]
}

fn parabola(s: f64) -> [Vec3; 4] {
    let u = Vec3::new(1.0, 0.2, 0.1).normalize();
    let v = Vec3::new(-0.1, 0.3, 1.0).normalize();
    [u * s + v * (0.6 * s * s), u + v * (1.2 * s), v * 1.2, Vec3::zeros()]
}

fn look_at(center: Vec3, up: Vec3, k: Intrinsics) -> CameraPose {
    let z = (-center).normalize();
    let x = up.cross(&z).normalize();
    let y = z.cross(&x);
    let r = Mat3::from_rows(&[x.transpose(), y.transpose(), z.transpose()]);
    CameraPose::new(r, center, k).unwrap()
}

fn rig() -> [CameraPose; 3] {
    let k = Intrinsics::new(500.0, 480.0, 0.5, 250.0, 200.0).unwrap();
    [
        look_at(Vec3::new(8.0, 1.0, 3.0), Vec3::z(), k),
        look_at(Vec3::new(2.0, 7.5, 4.0), Vec3::new(0.1, 0.0, 1.0), k),
        look_at(Vec3::new(-6.0, 4.0, 5.0), Vec3::z(), k),
    ]
}

fn observe(d: &[Vec3; 4], pose: &CameraPose) -> ImageCurveSample {
    let f = frenet3_from_derivatives(&d[1], &d[2], &d[3]).unwrap();
    let sample = SpaceCurveSample {
        point: pose.r * (d[0] - pose.c),
        frame: f.rotated(&pose.r),
        frame_id: FrameId::Camera(0),
    };
    project_sample(&sample, &TOL).unwrap()
}

fn measure(d: &[Vec3; 4], pose: &CameraPose) -> ViewMeasurement {
    lift_measurement(&observe(d, pose), pose).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Errors in `{Γ, T, N, K}` and `{τ, K̇}`.
fn errors(got: &Frenet3, point: &Vec3, want: &Frenet3, want_point: &Vec3) -> (f64, f64) {
    let low = [
        (point - want_point).norm() / want_point.norm().max(1.0),
        (got.t - want.t).norm(),
        (got.n - want.n).norm(),
        rel(got.k, want.k),
    ];
    let high = [rel(got.tau, want.tau), rel(got.kdot, want.kdot)];
    (
        low.into_iter().fold(0.0, f64::max),
        high.into_iter().fold(0.0, f64::max),
    )
}

#[test]
fn round_trip_recovers_third_order_geometry() {
    let curves: [(&str, Curve); 4] = [
        ("helix", helix),
        ("saddle", saddle),
        ("ellipse", ellipse),
        ("parabola", parabola),
    ];
    let [p1, p2, _] = rig();
    for (name, curve) in curves {
        for i in 0..60 {
            let s = -1.5 + 0.05 * i as f64;
            let d = curve(s);
            let want = frenet3_from_derivatives(&d[1], &d[2], &d[3]).unwrap();
            let m1 = measure(&d, &p1);
            let m2 = measure(&d, &p2);
            let rec = reconstruct(&m1, &m2, &TOL).unwrap();
            let (low, high) = errors(&rec.frame, &rec.point, &want, &d[0]);
            assert!(low <= 1e-8 && high <= 1e-6, "{name} s={s}: {low:e} {high:e}");
            assert!(rec.residuals.curvature_orthogonality.abs() <= 1e-10);
            assert!(rec.residuals.torsion_orthogonality.abs() <= 1e-10 * rec.frame.k.max(1.0));
            assert!(rec.residuals.tangent_reprojection <= 1e-10);
            assert!((0.0..std::f64::consts::PI).contains(&rec.theta1));
            assert!((0.0..std::f64::consts::PI).contains(&rec.theta2));
        }
    }
}

#[test]
fn helix_and_planar_torsion() {
    let [p1, p2, _] = rig();
    for i in 0..30 {
        let s = 0.1 * i as f64;
        let h = reconstruct(&measure(&helix(s), &p1), &measure(&helix(s), &p2), &TOL).unwrap();
        assert!((h.frame.tau - 0.5).abs() <= 1e-7 && h.frame.kdot.abs() <= 1e-7);
        for curve in [ellipse as Curve, parabola] {
            let d = curve(s - 1.0);
            let p = reconstruct(&measure(&d, &p1), &measure(&d, &p2), &TOL).unwrap();
            // near epipolar tangency see the next test
            if p.residuals.plane_separation >= 1e-2 {
                assert!(p.frame.tau.abs() <= 1e-8, "tau {}", p.frame.tau);
            }
        }
    }
}

#[test]
fn torsion_error_is_cubic_in_plane_separation() {
    // the parabola's tangent crosses the epipolar plane of this rig near s = 0.3
    let [p1, p2, _] = rig();
    let mut closest: f64 = 1.0;
    for i in 0..200 {
        let d = parabola(0.25 + 0.0005 * i as f64);
        let rec = reconstruct(&measure(&d, &p1), &measure(&d, &p2), &TOL).unwrap();
        let sep = rec.residuals.plane_separation;
        closest = closest.min(sep);
        assert!(
            rec.frame.tau.abs() <= 1e-13 / sep.powi(3),
            "sep {sep:e} tau {:e}",
            rec.frame.tau
        );
    }
    assert!(closest < 1e-3);
}

#[test]
fn frontal_circle_example() {
    // circle r = 1 in the plane z = 5, cameras at the origin and (0.5, 0, 0)
    let k = Intrinsics::identity();
    let p1 = CameraPose::new(Mat3::identity(), Vec3::zeros(), k).unwrap();
    let p2 = CameraPose::new(Mat3::identity(), Vec3::new(0.5, 0.0, 0.0), k).unwrap();
    let d = [
        Vec3::new(1.0, 0.0, 5.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(-1.0, 0.0, 0.0),
        Vec3::new(0.0, -1.0, 0.0),
    ];
    let m1 = measure(&d, &p1);
    let m2 = measure(&d, &p2);
    let tri = triangulate(&m1, &m2, &TOL).unwrap();
    // both tangents are along y, so the view planes meet along T = y
    let tan = reconstruct_tangent(&m1, &m2, &TOL).unwrap();
    assert_relative_eq!(tan.t, Vec3::y(), epsilon = 1e-12);
    let g1 = view_speed(&tan.t, &m1, tri.rho1);
    let g2 = view_speed(&tan.t, &m2, tri.rho2);
    let c = reconstruct_curvature(&m1, &m2, &tan.t, tri.rho1, tri.rho2, g1, g2, &TOL).unwrap();
    assert_relative_eq!(c.k, 1.0, epsilon = 1e-9);
    assert_relative_eq!(c.n, -Vec3::x(), epsilon = 1e-9);
}

#[test]
fn straight_line_has_no_normal() {
    let [p1, p2, _] = rig();
    let dir = Vec3::new(1.0, 0.5, -0.3).normalize();
    let d = [dir * 0.4, dir, Vec3::zeros(), Vec3::zeros()];
    let sample = |pose: &CameraPose| {
        let s = SpaceCurveSample {
            point: pose.r * (d[0] - pose.c),
            frame: Frenet3::line(1.0, pose.r * dir),
            frame_id: FrameId::Camera(0),
        };
        lift_measurement(&project_sample(&s, &TOL).unwrap(), pose).unwrap()
    };
    let (m1, m2) = (sample(&p1), sample(&p2));
    let tri = triangulate(&m1, &m2, &TOL).unwrap();
    let tan = reconstruct_tangent(&m1, &m2, &TOL).unwrap();
    let g1 = view_speed(&tan.t, &m1, tri.rho1);
    let g2 = view_speed(&tan.t, &m2, tri.rho2);
    assert!(matches!(
        reconstruct_curvature(&m1, &m2, &tan.t, tri.rho1, tri.rho2, g1, g2, &TOL),
        Err(GeomError::ZeroCurvature { .. })
    ));
    let rec = reconstruct(&m1, &m2, &TOL).unwrap();
    assert!(!rec.frame.has_normal);
    assert_relative_eq!(rec.frame.t, dir, epsilon = 1e-12);
    assert_relative_eq!(rec.point, d[0], epsilon = 1e-12);
}

#[test]
fn speed_ratio_and_depth_relations() {
    let [p1, p2, _] = rig();
    for i in 0..20 {
        let d = saddle(0.3 * i as f64);
        let o1 = observe(&d, &p1);
        let o2 = observe(&d, &p2);
        let (m1, m2) = (lift_measurement(&o1, &p1).unwrap(), lift_measurement(&o2, &p2).unwrap());
        let tri = triangulate(&m1, &m2, &TOL).unwrap();
        let tan = reconstruct_tangent(&m1, &m2, &TOL).unwrap();
        let ratio = two_view_speed_ratio(&tan.t, &m1, &m2, tri.rho1, tri.rho2, &TOL).unwrap();
        assert_relative_eq!(ratio, o1.frame2.g / o2.frame2.g, max_relative = 1e-12);
        // ρ′ = T_z under arc length
        let (r1, r2) = depth_speed_relations(&m1, &m2, &TOL).unwrap();
        let want = |o: &ImageCurveSample| o.point.rho_prime.unwrap() / (o.point.rho * o.frame2.g);
        assert!((r1 - want(&o1)).abs() <= 1e-10 * want(&o1).abs().max(1.0));
        assert!((r2 - want(&o2)).abs() <= 1e-10 * want(&o2).abs().max(1.0));
        // ρ′/(ρg) = cot θ / ‖γ‖
        let cot = |theta: f64, m: &ViewMeasurement| theta.cos() / theta.sin() / m.gamma.norm();
        assert!((r1 - cot(tan.theta1, &m1)).abs() <= 1e-12 * r1.abs().max(1.0));
        assert!((r2 - cot(tan.theta2, &m2)).abs() <= 1e-12 * r2.abs().max(1.0));
    }
}

#[test]
fn third_view_transfer() {
    let [p1, p2, p3] = rig();
    for i in 0..25 {
        let d = helix(0.2 * i as f64 - 2.0);
        let (m1, m2) = (measure(&d, &p1), measure(&d, &p2));
        let want = observe(&d, &p3);
        let got = transfer_to_view(&m1, &m2, &p3, &TOL).unwrap();
        assert_relative_eq!(got.point.gamma, want.point.gamma, epsilon = 1e-10);
        assert_relative_eq!(got.frame2.t, want.frame2.t, epsilon = 1e-9);
        assert!(rel(got.frame2.kappa, want.frame2.kappa) <= 1e-7);
        assert!(rel(got.frame2.kappadot, want.frame2.kappadot) <= 1e-7);
        let own = transfer_to_view(&m1, &m2, &p1, &TOL).unwrap();
        let o1 = observe(&d, &p1);
        assert!(rel(own.frame2.kappa, o1.frame2.kappa) <= 1e-9);
        assert_relative_eq!(own.frame2.t, o1.frame2.t, epsilon = 1e-9);
    }
    let d = helix(0.0);
    let far = CameraPose::new(p1.r, d[0] + p1.axis() * 1.0, p1.k).unwrap();
    assert!(matches!(
        transfer_to_view(&measure(&d, &p1), &measure(&d, &p2), &far, &TOL),
        Err(GeomError::BehindCamera { .. })
    ));
}

#[test]
fn pixel_samples_lift_like_normalized_ones() {
    let [p1, _, _] = rig();
    let d = saddle(0.7);
    let o = observe(&d, &p1);
    let k = p1.k.matrix();
    let f = intrinsics_transfer(&o.frame2, &k, &TOL).unwrap();
    let mut px = o;
    px.point.gamma = k * o.point.gamma;
    px.frame2 = f;
    px.coords = Coords::Pixel;
    let a = lift_measurement(&o, &p1).unwrap();
    let b = lift_measurement(&px, &p1).unwrap();
    assert_relative_eq!(a.gamma, b.gamma, epsilon = 1e-12);
    assert_relative_eq!(a.t, b.t, epsilon = 1e-12);
    assert!(rel(b.kappa, a.kappa) <= 1e-10 && rel(b.kappadot, a.kappadot) <= 1e-10);
}

#[test]
fn lift_with_rotated_pose() {
    let k = Intrinsics::identity();
    let r = mvg_core::rot_z(std::f64::consts::FRAC_PI_2);
    let pose = CameraPose::new(r, Vec3::zeros(), k).unwrap();
    let o = observe(
        &[Vec3::new(0.0, 0.0, 3.0), Vec3::x(), Vec3::y(), Vec3::zeros()],
        &CameraPose::new(Mat3::identity(), Vec3::zeros(), k).unwrap(),
    );
    let m = lift_measurement(&o, &pose).unwrap();
    // Rᵀ x for a 90° turn about z
    assert_relative_eq!(m.t, -Vec3::y(), epsilon = 1e-15);
    assert_relative_eq!(m.axis.dot(&m.gamma), 1.0, epsilon = 1e-15);
}

fn frame_strategy() -> impl Strategy<Value = (Vec3, Frenet3)> {
    (
        prop::array::uniform3(-1.0f64..1.0),
        prop::array::uniform3(-3.0f64..3.0),
        0.2f64..3.0,
        -2.0f64..2.0,
        -2.0f64..2.0,
    )
        .prop_map(|(p, w, k, kdot, tau)| {
            let r = rot_axis(&Vec3::from(w));
            let t = r * Vec3::x();
            let n = r * Vec3::y();
            let frame = Frenet3 {
                t,
                n,
                b: t.cross(&n),
                g: 1.0,
                g_prime: 0.0,
                k,
                kdot,
                tau,
                has_normal: true,
            };
            (Vec3::from(p), frame)
        })
}

proptest! {
    // Any epipolar-consistent pair of third-order measurements reconstructs,
    // and the reconstruction reprojects onto the inputs.
    #[test]
    fn reconstruction_inverts_projection((p, frame) in frame_strategy()) {
        let [p1, p2, _] = rig();
        let obs = |pose: &CameraPose| {
            let s = SpaceCurveSample {
                point: pose.r * (p - pose.c),
                frame: frame.rotated(&pose.r),
                frame_id: FrameId::Camera(0),
            };
            project_sample(&s, &TOL)
        };
        let (Ok(o1), Ok(o2)) = (obs(&p1), obs(&p2)) else { return Ok(()) };
        let m1 = lift_measurement(&o1, &p1).unwrap();
        let m2 = lift_measurement(&o2, &p2).unwrap();
        // skip near-epipolar tangents where the map is ill conditioned
        prop_assume!(plane_separation(&m1, &m2) > 1e-2);
        let rec = reconstruct(&m1, &m2, &TOL).unwrap();
        for (pose, o) in [(&p1, &o1), (&p2, &o2)] {
            let back = transfer_to_view(&m1, &m2, pose, &TOL).unwrap();
            let scale = o.frame2.kappa.abs().max(1.0);
            prop_assert!((back.frame2.t - o.frame2.t).norm() <= 1e-8);
            prop_assert!((back.frame2.kappa - o.frame2.kappa).abs() <= 1e-8 * scale);
            prop_assert!((back.frame2.kappadot - o.frame2.kappadot).abs() <= 1e-8 * o.frame2.kappadot.abs().max(scale));
        }
        prop_assert!((rec.frame.k - frame.k).abs() <= 1e-8 * frame.k.max(1.0));
    }
}
