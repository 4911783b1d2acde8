//! CSV tables and static SVG charts of a report.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use crate::io::read_json;
use crate::report::Report;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];
const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 50.0;
/// Exact zeros are drawn at this floor.
const LOG_FLOOR: f64 = -18.0;

fn log10(x: f64) -> f64 {
    if x > 0.0 {
        x.log10().max(LOG_FLOOR)
    } else {
        LOG_FLOOR
    }
}

struct Chart {
    title: String,
    x_label: &'static str,
    y_label: &'static str,
    series: Vec<Series>,
}

struct Series {
    name: String,
    points: Vec<(f64, f64)>,
    /// Draw a line through the points, not just markers.
    joined: bool,
}

impl Chart {
    fn svg(&self) -> String {
        let pts = self.series.iter().flat_map(|s| s.points.iter());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in pts {
            (x0, x1, y0, y1) = (x0.min(x), x1.max(x), y0.min(y), y1.max(y));
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        if x1 - x0 < 1e-12 {
            x1 = x0 + 1.0;
        }
        if y1 - y0 < 1e-12 {
            y1 = y0 + 1.0;
        }
        let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
        let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="11">"#
        );
        let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
            W / 2.0,
            self.title
        );
        let _ = writeln!(
            s,
            r#"<path d="M{m} {m} V{b} H{r}" fill="none" stroke="black"/>"#,
            m = MARGIN,
            b = H - MARGIN,
            r = W - MARGIN
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            W / 2.0,
            H - 12.0,
            self.x_label
        );
        let _ = writeln!(
            s,
            r#"<text x="14" y="{y}" text-anchor="middle" transform="rotate(-90 14 {y})">{}</text>"#,
            self.y_label,
            y = H / 2.0
        );
        for (v, anchor, x, y) in [
            (x0, "start", sx(x0), H - MARGIN + 14.0),
            (x1, "end", sx(x1), H - MARGIN + 14.0),
        ] {
            let _ = writeln!(s, r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}">{v:.3}</text>"#);
        }
        for v in [y0, y1] {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.3}</text>"#,
                MARGIN - 4.0,
                sy(v) + 4.0
            );
        }
        for (k, Series { name, points, joined }) in self.series.iter().enumerate() {
            let color = PALETTE[k % PALETTE.len()];
            if *joined && points.len() > 1 {
                let d: Vec<String> = points
                    .iter()
                    .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                    .collect();
                let _ = writeln!(
                    s,
                    r#"<polyline points="{}" fill="none" stroke="{color}"/>"#,
                    d.join(" ")
                );
            }
            for &(x, y) in points {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}"/>"#,
                    sx(x),
                    sy(y)
                );
            }
            let ly = MARGIN + 14.0 * k as f64;
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{ly:.2}" fill="{color}" text-anchor="end">{name}</text>"#,
                W - MARGIN
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn errors_chart(report: &Report) -> Chart {
    let mut names: Vec<&String> = report.samples.iter().flat_map(|s| s.errors.keys()).collect();
    names.sort();
    names.dedup();
    let series = names
        .into_iter()
        .map(|name| {
            let points = report
                .samples
                .iter()
                .enumerate()
                .filter_map(|(i, s)| s.errors.get(name).map(|e| (i as f64, log10(*e))))
                .collect();
            Series {
                name: name.clone(),
                points,
                joined: false,
            }
        })
        .collect();
    Chart {
        title: format!("{} errors per sample", report.command),
        x_label: "sample",
        y_label: "log10 relative error",
        series,
    }
}

fn convergence_chart(report: &Report) -> Chart {
    let series = report
        .convergence
        .iter()
        .map(|c| {
            let points = c
                .steps
                .iter()
                .zip(&c.errors)
                .map(|(h, e)| (log10(*h), log10(*e)))
                .collect();
            Series {
                name: format!("{} ({:.2})", c.name, c.fitted_order),
                points,
                joined: true,
            }
        })
        .collect();
    Chart {
        title: format!("{} convergence", report.command),
        x_label: "log10 h",
        y_label: "log10 error",
        series,
    }
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn errors_csv(report: &Report) -> Result<String> {
    let rows = report
        .samples
        .iter()
        .flat_map(|r| {
            r.errors.iter().map(|(q, e)| {
                vec![
                    r.curve_id.to_string(),
                    r.sample_id.to_string(),
                    q.clone(),
                    format!("{e:.16e}"),
                ]
            })
        })
        .collect();
    csv_text(&["curve_id", "sample_id", "quantity", "error"], rows)
}

fn convergence_csv(report: &Report) -> Result<String> {
    let rows = report
        .convergence
        .iter()
        .flat_map(|c| {
            c.steps.iter().zip(&c.errors).map(|(h, e)| {
                vec![
                    c.name.clone(),
                    format!("{h:.16e}"),
                    format!("{e:.16e}"),
                    format!("{:.16e}", c.fitted_order),
                ]
            })
        })
        .collect();
    csv_text(&["name", "h", "error", "fitted_order"], rows)
}

/// Writes `errors.csv`, `convergence.csv`, `errors.svg` and
/// `convergence.svg` into `out`, next to the report by default.
pub fn plot(report_path: &Path, out: Option<&Path>) -> Result<Vec<PathBuf>> {
    let report: Report = read_json(report_path)?;
    let dir = match out {
        Some(d) => d.to_path_buf(),
        None => report_path.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    if !dir.as_os_str().is_empty() {
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let files = [
        ("errors.csv", errors_csv(&report)?),
        ("convergence.csv", convergence_csv(&report)?),
        ("errors.svg", errors_chart(&report).svg()),
        ("convergence.svg", convergence_chart(&report).svg()),
    ];
    let mut written = Vec::new();
    for (name, text) in files {
        let p = dir.join(name);
        fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        written.push(p);
    }
    Ok(written)
}
