use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use mvg_cli::{io, Profile, VerifyOptions};

/// Multiview differential geometry of curves: synthetic datasets and checks.
///
/// Exit status: 0 pass, 1 tolerance failure, 2 usage or I/O error.
#[derive(Parser)]
#[command(name = "mvg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the scene and render every frame.
    Generate {
        /// Scene config (JSON); the built-in scene if absent.
        #[arg(long)]
        scene: Option<PathBuf>,
        #[arg(long, default_value = "dataset")]
        out: PathBuf,
        /// Override the number of orbit frames.
        #[arg(long)]
        frames: Option<usize>,
    },
    /// Check projections, two-view reconstruction and optional transfer.
    Verify {
        dataset: PathBuf,
        /// Two frames to reconstruct from, and optionally a third to transfer into.
        #[arg(long, value_delimiter = ',', default_values_t = [0, 10])]
        views: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Profile::Default)]
        tol: Profile,
        /// Count degenerate samples as failures.
        #[arg(long)]
        strict_degenerate: bool,
        /// Report path; `<dataset>/report.json` by default.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare closed-form flow relations with finite differences.
    Flow {
        dataset: PathBuf,
        #[arg(long, default_value_t = 0)]
        frame: usize,
        #[arg(long, value_enum, default_value_t = Profile::Fd)]
        tol: Profile,
        /// Report path; `<dataset>/flow_report.json` by default.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write CSV tables and SVG charts of a report.
    Plot {
        report: PathBuf,
        /// Output directory; the report's directory by default.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Generate { scene, out, frames } => {
            let scene = mvg_cli::load_config(scene.as_deref(), frames)?;
            let summary = mvg_cli::generate(&scene, &out)?;
            print!("{}", summary.text());
            Ok(true)
        }
        Command::Verify {
            dataset,
            views,
            tol,
            strict_degenerate,
            out,
        } => {
            let opts = VerifyOptions {
                views,
                profile: tol,
                strict_degenerate,
            };
            let report = mvg_cli::verify(&dataset, &opts)?;
            io::write_json(&out.unwrap_or_else(|| dataset.join("report.json")), &report)?;
            print!("{}", report.summary());
            Ok(report.pass)
        }
        Command::Flow {
            dataset,
            frame,
            tol,
            out,
        } => {
            let report = mvg_cli::flow(&dataset, frame, tol)?;
            io::write_json(&out.unwrap_or_else(|| dataset.join("flow_report.json")), &report)?;
            print!("{}", report.summary());
            Ok(report.pass)
        }
        Command::Plot { report, out } => {
            for p in mvg_cli::plot(&report, out.as_deref())? {
                println!("{}", p.display());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
