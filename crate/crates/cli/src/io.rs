//! Dataset directory layout: `scene.json`, `samples3d.jsonl` and
//! `views/<frame>.jsonl`.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use mvg_dataset::Scene;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::json;
use crate::records::{SampleRecord, ViewRecord};

pub fn scene_path(dir: &Path) -> PathBuf {
    dir.join("scene.json")
}

pub fn samples_path(dir: &Path) -> PathBuf {
    dir.join("samples3d.jsonl")
}

pub fn view_path(dir: &Path, frame: usize) -> PathBuf {
    dir.join("views").join(format!("{frame}.jsonl"))
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).with_context(|| format!("{}:{}", path.display(), i + 1)))
        .collect()
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = json::to_line(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn read_scene(dir: &Path) -> Result<Scene> {
    let scene: Scene = read_json(&scene_path(dir))?;
    scene.validate().context("invalid scene.json")?;
    Ok(scene)
}

pub fn read_samples(dir: &Path) -> Result<Vec<SampleRecord>> {
    read_jsonl(&samples_path(dir))
}

pub fn read_view(dir: &Path, frame: usize, frames: usize) -> Result<Vec<ViewRecord>> {
    if frame >= frames {
        bail!("frame {frame} out of range: dataset has {frames} frames");
    }
    let records: Vec<ViewRecord> = read_jsonl(&view_path(dir, frame))?;
    if let Some(r) = records.iter().find(|r| r.frame_id != frame) {
        bail!("views/{frame}.jsonl holds a record of frame {}", r.frame_id);
    }
    Ok(records)
}
