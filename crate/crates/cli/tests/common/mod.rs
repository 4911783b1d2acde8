//! Runs the `mvg` binary and reads what it writes.
#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use mvg_cli::Report;

pub fn mvg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvg"))
        .args(args)
        .output()
        .expect("mvg runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

/// Generates the default dataset into `dir`.
pub fn generate(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["generate", "--out", path(dir)];
    args.extend_from_slice(extra);
    mvg(&args)
}

pub fn read_report(p: &Path) -> Report {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}
