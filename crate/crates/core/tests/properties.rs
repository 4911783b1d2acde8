use mvg_core::{e3, frenet2_from_derivatives, frenet3_from_derivatives, project, Vec3};
use proptest::prelude::*;

// Γ(s) = (cos s + 0.3 s², sin 2s, 0.5 s³ − s)
fn curve(s: f64) -> [Vec3; 4] {
    let (sn, cs) = s.sin_cos();
    let (s2, c2) = (2.0 * s).sin_cos();
    [
        Vec3::new(cs + 0.3 * s * s, s2, 0.5 * s * s * s - s),
        Vec3::new(-sn + 0.6 * s, 2.0 * c2, 1.5 * s * s - 1.0),
        Vec3::new(-cs + 0.6, -4.0 * s2, 3.0 * s),
        Vec3::new(sn, -8.0 * c2, 3.0),
    ]
}

fn tangent(s: f64) -> Vec3 {
    curve(s)[1].normalize()
}

fn fit_order(hs: &[f64], errs: &[f64]) -> f64 {
    let n = hs.len() as f64;
    let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[test]
fn frenet_equations_hold_to_second_order() {
    for s in [-0.8, 0.1, 0.9] {
        let [_, d1, d2, d3] = curve(s);
        let f = frenet3_from_derivatives(&d1, &d2, &d3).unwrap();
        let hs = [1e-2, 1e-3, 1e-4];
        let errs: Vec<f64> = hs
            .iter()
            .map(|&h| {
                let dt = (tangent(s + h) - tangent(s - h)) / (2.0 * h);
                (dt - f.n * (f.g * f.k)).norm()
            })
            .collect();
        let p = fit_order(&hs, &errs);
        assert!((p - 2.0).abs() <= 0.2, "order {p} errors {errs:?}");
    }
}

#[test]
fn torsion_matches_binormal_rate() {
    // dB/ds = -G τ N, checked by centered differences
    let s = 0.4;
    let bin = |s: f64| {
        let [_, d1, d2, d3] = curve(s);
        frenet3_from_derivatives(&d1, &d2, &d3).unwrap().b
    };
    let [_, d1, d2, d3] = curve(s);
    let f = frenet3_from_derivatives(&d1, &d2, &d3).unwrap();
    let h = 1e-5;
    let db = (bin(s + h) - bin(s - h)) / (2.0 * h);
    assert!((db + f.n * (f.g * f.tau)).norm() < 1e-7);
    let kk = |s: f64| {
        let [_, d1, d2, d3] = curve(s);
        frenet3_from_derivatives(&d1, &d2, &d3).unwrap().k
    };
    let dk = (kk(s + h) - kk(s - h)) / (2.0 * h);
    assert!((dk / f.g - f.kdot).abs() < 1e-7, "{} {}", dk / f.g, f.kdot);
}

proptest! {
    #[test]
    fn reparametrization_leaves_intrinsics(u in -1.2f64..1.2) {
        let s = u * u * u + u;
        let (p1, p2, p3) = (3.0 * u * u + 1.0, 6.0 * u, 6.0);
        let [_, d1, d2, d3] = curve(s);
        let e1 = d1 * p1;
        let e2 = d2 * (p1 * p1) + d1 * p2;
        let e3v = d3 * (p1 * p1 * p1) + d2 * (3.0 * p1 * p2) + d1 * p3;
        let a = frenet3_from_derivatives(&d1, &d2, &d3).unwrap();
        let b = frenet3_from_derivatives(&e1, &e2, &e3v).unwrap();
        prop_assert!((a.t - b.t).norm() < 1e-9);
        prop_assert!((a.n - b.n).norm() < 1e-9);
        prop_assert!((a.b - b.b).norm() < 1e-9);
        prop_assert!((a.k - b.k).abs() < 1e-9 * a.k.max(1.0));
        prop_assert!((a.kdot - b.kdot).abs() < 1e-9 * a.kdot.abs().max(1.0));
        prop_assert!((a.tau - b.tau).abs() < 1e-9 * a.tau.abs().max(1.0));
        prop_assert!((b.g - a.g * p1).abs() < 1e-12 * b.g);
    }

    #[test]
    fn frame_invariants(s in -2.0f64..2.0) {
        let [_, d1, d2, d3] = curve(s);
        let f = frenet3_from_derivatives(&d1, &d2, &d3).unwrap();
        prop_assert!((f.t.norm() - 1.0).abs() < 1e-12);
        prop_assert!((f.n.norm() - 1.0).abs() < 1e-12);
        prop_assert!(f.t.dot(&f.n).abs() < 1e-12);
        prop_assert!((f.b - f.t.cross(&f.n)).norm() < 1e-12);
        prop_assert!(f.k >= 0.0 && f.g > 0.0);
    }

    #[test]
    fn image_normal_is_right_handed(
        x in -3.0f64..3.0, y in -3.0f64..3.0,
        a in -3.0f64..3.0, b in -3.0f64..3.0,
    ) {
        prop_assume!(x.hypot(y) > 1e-3);
        let f = frenet2_from_derivatives(
            &Vec3::new(x, y, 0.0), &Vec3::new(a, b, 0.0), &Vec3::zeros()).unwrap();
        prop_assert_eq!(f.n.z, 0.0);
        prop_assert!(f.t.dot(&f.n).abs() < 1e-15);
        prop_assert!((f.t.cross(&f.n) + e3()).norm() < 1e-15);
    }

    #[test]
    fn project_inverts_depth_lift(u in -2.0f64..2.0, v in -2.0f64..2.0, z in 0.1f64..50.0) {
        let gamma = Vec3::new(u, v, 1.0);
        let p = project(&(gamma * z)).unwrap();
        prop_assert!((p.gamma - gamma).norm() < 1e-15 * gamma.norm());
        prop_assert!((p.rho - z).abs() < 1e-15 * z);
        prop_assert_eq!(p.gamma.z, 1.0);
    }
}
