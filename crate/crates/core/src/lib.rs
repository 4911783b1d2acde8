//! Fixed-size geometry for curves seen through pinhole cameras.
//!
//! Everything lives in `f64` 3-vectors. Image quantities use the z = 1
//! embedding: image points have third component exactly 1, image tangents and
//! normals have third component exactly 0.
//!
//! # Sign of image curvature
//!
//! The image normal is always `n = t × e₃`. With this choice a
//! counterclockwise unit circle has curvature `κ = −1`, and every formula in
//! the workspace is written against it.
//!
//! ```
//! use mvg_core::{frenet2_from_derivatives, Vec3};
//! // (cos s, sin s) at s = 0
//! let f = frenet2_from_derivatives(
//!     &Vec3::new(0.0, 1.0, 0.0),
//!     &Vec3::new(-1.0, 0.0, 0.0),
//!     &Vec3::new(0.0, -1.0, 0.0),
//! )
//! .unwrap();
//! assert!((f.kappa + 1.0).abs() < 1e-15);
//! ```

mod camera;
mod error;
mod frenet;
mod linalg;
mod tol;

pub use camera::{
    depth_derivatives, from_pixel, project, project_with, to_pixel, world_to_camera, CameraPose, ImagePoint, Intrinsics,
};
pub use error::GeomError;
pub use frenet::{frenet2_from_derivatives, frenet2_with, frenet3_from_derivatives, frenet3_with, Frenet2, Frenet3};
pub use linalg::{e1, e2, e3, is_rotation, rot_axis, rot_x, rot_y, rot_z, skew, solve3, unskew, Mat3, Solve3, Vec3};
pub use tol::Tolerances;

pub use nalgebra;

pub type Result<T> = std::result::Result<T, GeomError>;
