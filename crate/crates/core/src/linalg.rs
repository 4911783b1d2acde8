//! Row-major 3x3 conventions: `m[(i, j)]` is row `i`, column `j`.

use crate::GeomError;

pub type Vec3 = nalgebra::Vector3<f64>;
pub type Mat3 = nalgebra::Matrix3<f64>;

pub fn e1() -> Vec3 {
    Vec3::new(1.0, 0.0, 0.0)
}

pub fn e2() -> Vec3 {
    Vec3::new(0.0, 1.0, 0.0)
}

pub fn e3() -> Vec3 {
    Vec3::new(0.0, 0.0, 1.0)
}

/// `skew(w) * v == w.cross(&v)`.
pub fn skew(w: &Vec3) -> Mat3 {
    Mat3::new(0.0, -w.z, w.y, w.z, 0.0, -w.x, -w.y, w.x, 0.0)
}

/// Vector of the skew-symmetric part of `m`.
pub fn unskew(m: &Mat3) -> Vec3 {
    Vec3::new(m[(2, 1)] - m[(1, 2)], m[(0, 2)] - m[(2, 0)], m[(1, 0)] - m[(0, 1)]) * 0.5
}

/// Active rotation about x by `theta` radians.
pub fn rot_x(theta: f64) -> Mat3 {
    let (s, c) = theta.sin_cos();
    Mat3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

/// Active rotation about y by `theta` radians.
pub fn rot_y(theta: f64) -> Mat3 {
    let (s, c) = theta.sin_cos();
    Mat3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

/// Active rotation about z by `theta` radians.
///
/// ```
/// use mvg_core::{rot_z, Vec3};
/// let v = rot_z(std::f64::consts::FRAC_PI_2) * Vec3::x();
/// assert!((v - Vec3::y()).norm() < 1e-15);
/// ```
pub fn rot_z(theta: f64) -> Mat3 {
    let (s, c) = theta.sin_cos();
    Mat3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

/// Rodrigues rotation `exp(skew(w))`.
pub fn rot_axis(w: &Vec3) -> Mat3 {
    let th = w.norm();
    let k = skew(w);
    if th < 1e-8 {
        // series to third order keeps full precision here
        return Mat3::identity() + k + k * k * (0.5 - th * th / 24.0);
    }
    let a = th.sin() / th;
    let b = (1.0 - th.cos()) / (th * th);
    Mat3::identity() + k * a + k * k * b
}

/// Orthogonality residual `‖RᵀR − I‖` and determinant checks.
pub fn is_rotation(r: &Mat3, tol: f64) -> Result<(), GeomError> {
    let residual = (r.transpose() * r - Mat3::identity()).norm();
    let det = r.determinant();
    if residual > tol || (det - 1.0).abs() > tol {
        return Err(GeomError::NotARotation { residual, det });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solve3 {
    pub x: Vec3,
    /// One-norm condition estimate `‖A‖₁‖A⁻¹‖₁`.
    pub cond: f64,
}

struct Lu {
    a: [[f64; 3]; 3],
    rows: [usize; 3],
    cols: [usize; 3],
}

impl Lu {
    fn factor(m: &Mat3) -> Option<Lu> {
        let mut a = [[0.0; 3]; 3];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = m[(i, j)];
            }
        }
        let mut rows = [0, 1, 2];
        let mut cols = [0, 1, 2];
        for k in 0..3 {
            let (mut pi, mut pj, mut best) = (k, k, -1.0);
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, v) in row.iter().enumerate().skip(k) {
                    if v.abs() > best {
                        best = v.abs();
                        pi = i;
                        pj = j;
                    }
                }
            }
            if best == 0.0 || !best.is_finite() {
                return None;
            }
            a.swap(k, pi);
            rows.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            cols.swap(k, pj);
            for i in k + 1..3 {
                let l = a[i][k] / a[k][k];
                a[i][k] = l;
                for j in k + 1..3 {
                    a[i][j] -= l * a[k][j];
                }
            }
        }
        Some(Lu { a, rows, cols })
    }

    fn solve(&self, b: &Vec3) -> Vec3 {
        let a = &self.a;
        let mut y = [b[self.rows[0]], b[self.rows[1]], b[self.rows[2]]];
        for i in 1..3 {
            for j in 0..i {
                y[i] -= a[i][j] * y[j];
            }
        }
        for i in (0..3).rev() {
            for j in i + 1..3 {
                y[i] -= a[i][j] * y[j];
            }
            y[i] /= a[i][i];
        }
        let mut x = Vec3::zeros();
        for (k, &c) in self.cols.iter().enumerate() {
            x[c] = y[k];
        }
        x
    }
}

fn norm1(m: &Mat3) -> f64 {
    (0..3)
        .map(|j| (0..3).map(|i| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves `m x = b` by Gaussian elimination with full pivoting.
///
/// Fails with `IllConditionedSystem` when the matrix is singular or its
/// condition estimate exceeds `cond_limit`.
pub fn solve3(m: &Mat3, b: &Vec3, cond_limit: f64) -> Result<Solve3, GeomError> {
    let lu = Lu::factor(m).ok_or(GeomError::IllConditionedSystem { cond: f64::INFINITY })?;
    let mut inv = Mat3::zeros();
    for j in 0..3 {
        let mut ej = Vec3::zeros();
        ej[j] = 1.0;
        inv.set_column(j, &lu.solve(&ej));
    }
    let cond = norm1(m) * norm1(&inv);
    if !cond.is_finite() || cond > cond_limit {
        return Err(GeomError::IllConditionedSystem { cond });
    }
    Ok(Solve3 { x: lu.solve(b), cond })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skew_matches_cross() {
        let w = Vec3::new(0.3, -1.2, 2.0);
        let v = Vec3::new(-0.7, 0.4, 1.1);
        assert!((skew(&w) * v - w.cross(&v)).norm() < 1e-15);
        assert_eq!(unskew(&skew(&w)), w);
    }

    #[test]
    fn rodrigues_agrees_with_axis_rotations() {
        let th = 0.83;
        assert!((rot_axis(&(Vec3::z() * th)) - rot_z(th)).norm() < 1e-15);
        assert!((rot_axis(&(Vec3::x() * th)) - rot_x(th)).norm() < 1e-15);
        assert!((rot_axis(&(Vec3::y() * th)) - rot_y(th)).norm() < 1e-15);
        let small = Vec3::new(1e-9, -2e-9, 3e-10);
        let r = rot_axis(&small);
        assert!(is_rotation(&r, 1e-14).is_ok());
        assert!((r - (Mat3::identity() + skew(&small))).norm() < 1e-17);
    }

    #[test]
    fn solve3_matches_nalgebra_inverse() {
        let m = Mat3::new(0.0, 2.0, 1.0, 1e-3, -1.0, 4.0, 3.0, 0.5, -2.0);
        let b = Vec3::new(1.0, -2.0, 0.25);
        let s = solve3(&m, &b, 1e12).unwrap();
        let x = m.try_inverse().unwrap() * b;
        assert!((s.x - x).norm() < 1e-14 * x.norm());
        let cond = norm1(&m) * norm1(&m.try_inverse().unwrap());
        assert!((s.cond - cond).abs() < 1e-12 * cond);
    }

    #[test]
    fn solve3_rejects_singular() {
        let m = Mat3::new(1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 1.0, 1.0);
        assert!(matches!(
            solve3(&m, &Vec3::x(), 1e12),
            Err(GeomError::IllConditionedSystem { .. })
        ));
        let near = Mat3::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1e-14);
        assert!(solve3(&near, &Vec3::x(), 1e12).is_err());
        assert!(solve3(&near, &Vec3::x(), 1e15).is_ok());
    }
}
