use mvg_core::GeomError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DatasetError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("parameter {s} outside [{s0}, {s1}]")]
    OutOfRange { s: f64, s0: f64, s1: f64 },
    #[error("curve {id}: {reason}")]
    InvalidCurve { id: usize, reason: String },
    #[error("quadric {id}: {reason}")]
    InvalidQuadric { id: usize, reason: String },
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("view direction is parallel to the up vector")]
    DegenerateLookAt,
    #[error("camera center lies inside the quadric")]
    CameraInsideQuadric,
    #[error("no epipolar match for sample {index} (estimated angular error {angle:e} rad)")]
    NoEpipolarMatch { index: usize, angle: f64 },
}
