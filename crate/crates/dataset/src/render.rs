use mvg_core::{to_pixel, CameraPose, GeomError, Tolerances};
use mvg_projection::{intrinsics_transfer, project_sample, Coords, FrameId, ImageCurveSample, SpaceCurveSample};

use crate::{CurveSample, ImageFormat};

/// One sample as seen in one frame, in pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderedSample {
    pub curve_id: usize,
    pub sample_id: usize,
    pub frame_id: usize,
    pub image: ImageCurveSample,
    /// Ground-truth depth along the optical axis.
    pub depth: f64,
    /// Ground truth in the world frame.
    pub world: SpaceCurveSample,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RenderedView {
    pub frame_id: usize,
    pub samples: Vec<RenderedSample>,
    pub dropped_behind: usize,
    pub dropped_outside: usize,
    /// Tangent along the ray or stationary image point.
    pub dropped_degenerate: usize,
}

impl RenderedView {
    pub fn dropped(&self) -> usize {
        self.dropped_behind + self.dropped_outside + self.dropped_degenerate
    }
}

/// Projects world samples into `pose`, keeping input order. Samples behind
/// the camera, outside the image or degenerate are dropped and counted.
pub fn render_view(samples: &[CurveSample], pose: &CameraPose, format: &ImageFormat, frame_id: usize) -> RenderedView {
    let tol = Tolerances::DEFAULT;
    let k = pose.k.matrix();
    let mut view = RenderedView {
        frame_id,
        ..RenderedView::default()
    };
    for cs in samples {
        let cam = SpaceCurveSample {
            point: pose.r * (cs.sample.point - pose.c),
            frame: cs.sample.frame.rotated(&pose.r),
            frame_id: FrameId::Camera(frame_id),
        };
        let projected = project_sample(&cam, &tol).and_then(|im| {
            let f2 = intrinsics_transfer(&im.frame2, &k, &tol)?;
            Ok((im, f2))
        });
        let (im, f2) = match projected {
            Ok(v) => v,
            Err(GeomError::BehindCamera { .. }) => {
                view.dropped_behind += 1;
                continue;
            }
            Err(_) => {
                view.dropped_degenerate += 1;
                continue;
            }
        };
        let mut point = im.point;
        point.gamma = to_pixel(&im.point.gamma, &pose.k);
        if !format.contains(&point.gamma) {
            view.dropped_outside += 1;
            continue;
        }
        view.samples.push(RenderedSample {
            curve_id: cs.curve_id,
            sample_id: cs.sample_id,
            frame_id,
            image: ImageCurveSample {
                point,
                frame2: f2,
                coords: Coords::Pixel,
            },
            depth: im.point.rho,
            world: cs.sample,
        });
    }
    view
}
