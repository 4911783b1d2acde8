use mvg_core::Vec3;

use crate::{DatasetError, Result};

/// Largest accepted angle between a matched displacement and the epipolar plane.
pub const EPIPOLAR_ANGLE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpipolarMatch {
    pub index: usize,
    pub prev: Vec3,
    pub next: Vec3,
    /// Centered difference `(next − prev) / 2h`.
    pub gw_t: Vec3,
    /// Estimated angle between the true displacement and the epipolar plane.
    pub angle: f64,
}

/// Matches samples of the generator at time `t` to the generators at `t ∓ h`
/// through the epipolar plane `span{Γʷ − c, ċ}`.
///
/// `prev` and `next` are ordered polylines along the generator (closed when
/// `closed`). Each match is the plane crossing nearest the sample, found by
/// linear interpolation. The interpolated point lies in the plane exactly but
/// off the true generator by about the chord sagitta `u(1−u)/2 ‖Δ²‖`, so the
/// angular error is estimated as sagitta over displacement. Matches above
/// [`EPIPOLAR_ANGLE_TOL`] fail with `NoEpipolarMatch`, which flags sampling
/// too coarse for the step `h`.
pub fn epipolar_correspond(
    cur: &[Vec3],
    prev: &[Vec3],
    next: &[Vec3],
    c: &Vec3,
    c_t: &Vec3,
    h: f64,
    closed: bool,
) -> Result<Vec<EpipolarMatch>> {
    cur.iter()
        .enumerate()
        .map(|(index, x)| {
            let m = (x - c).cross(c_t).normalize();
            let (p, ap) = crossing(x, &m, prev, closed).ok_or(DatasetError::NoEpipolarMatch {
                index,
                angle: f64::INFINITY,
            })?;
            let (q, aq) = crossing(x, &m, next, closed).ok_or(DatasetError::NoEpipolarMatch {
                index,
                angle: f64::INFINITY,
            })?;
            let angle = ap.max(aq);
            if !(angle <= EPIPOLAR_ANGLE_TOL) {
                return Err(DatasetError::NoEpipolarMatch { index, angle });
            }
            Ok(EpipolarMatch {
                index,
                prev: p,
                next: q,
                gw_t: (q - p) / (2.0 * h),
                angle,
            })
        })
        .collect()
}

/// Plane crossing of the polyline nearest `x`, with its angular error estimate.
fn crossing(x: &Vec3, m: &Vec3, line: &[Vec3], closed: bool) -> Option<(Vec3, f64)> {
    let n = line.len();
    if n < 3 {
        return None;
    }
    let at = |i: isize| -> Option<Vec3> {
        if closed {
            Some(line[i.rem_euclid(n as isize) as usize])
        } else if (0..n as isize).contains(&i) {
            Some(line[i as usize])
        } else {
            None
        }
    };
    let segments = if closed { n } else { n - 1 };
    let mut best: Option<(f64, Vec3, f64)> = None;
    for j in 0..segments as isize {
        let (a, b) = (at(j)?, at(j + 1)?);
        let (fa, fb) = (m.dot(&(a - x)), m.dot(&(b - x)));
        if fa * fb > 0.0 || fa == fb {
            continue;
        }
        let u = fa / (fa - fb);
        let y = a + (b - a) * u;
        let dist = (y - x).norm();
        if best.is_some_and(|(d, _, _)| d <= dist) {
            continue;
        }
        // second difference on whichever side exists
        let d2 = [at(j - 1).map(|p| p - a * 2.0 + b), at(j + 2).map(|q| a - b * 2.0 + q)]
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        let sagitta = u * (1.0 - u) / 2.0 * d2;
        let angle = if sagitta == 0.0 { 0.0 } else { sagitta / dist };
        best = Some((dist, y, angle));
    }
    best.map(|(_, y, a)| (y, a))
}
