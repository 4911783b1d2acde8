use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use mvg_dataset::{render_view, sample_scene, Scene};

use crate::io::{samples_path, scene_path, view_path, write_json};
use crate::json;
use crate::records::{SampleRecord, ViewRecord};

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub curves: usize,
    pub samples: usize,
    pub frames: usize,
    /// Samples missing from each frame.
    pub dropped: Vec<usize>,
}

impl Summary {
    pub fn text(&self) -> String {
        format!(
            "{} curves, {} samples, {} frames, {} dropped ({:?} per frame)\n",
            self.curves,
            self.samples,
            self.frames,
            self.dropped.iter().sum::<usize>(),
            self.dropped
        )
    }
}

/// Scene from a config file, or the default scene, with an optional frame
/// count override.
pub fn load_config(config: Option<&Path>, frames: Option<usize>) -> Result<Scene> {
    let mut scene = match config {
        Some(p) => crate::io::read_json(p)?,
        None => Scene::default(),
    };
    if let Some(n) = frames {
        scene.orbit.frames = n;
    }
    scene.validate().context("invalid scene")?;
    Ok(scene)
}

pub fn generate(scene: &Scene, out: &Path) -> Result<Summary> {
    let samples = sample_scene(scene)?;
    let poses = scene.poses()?;
    fs::create_dir_all(out.join("views")).with_context(|| format!("creating {}", out.display()))?;
    write_json(&scene_path(out), scene)?;
    let records: Vec<SampleRecord> = samples.iter().map(SampleRecord::from).collect();
    fs::write(samples_path(out), json::to_lines(&records)?)?;
    let mut dropped = Vec::with_capacity(poses.len());
    for (i, pose) in poses.iter().enumerate() {
        let view = render_view(&samples, pose, &scene.orbit.image, i);
        let records: Vec<ViewRecord> = view.samples.iter().map(ViewRecord::from).collect();
        fs::write(view_path(out, i), json::to_lines(&records)?)?;
        dropped.push(view.dropped());
    }
    Ok(Summary {
        curves: scene.curves.len(),
        samples: samples.len(),
        frames: poses.len(),
        dropped,
    })
}
