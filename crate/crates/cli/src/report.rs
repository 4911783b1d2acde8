use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Named tolerance profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Profile {
    Strict,
    Default,
    /// Finite-difference comparisons; convergence orders are checked too.
    Fd,
}

impl Profile {
    pub fn tolerance(self) -> f64 {
        match self {
            Profile::Strict => 1e-8,
            Profile::Default => 1e-6,
            Profile::Fd => 1e-3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::Strict => "strict",
            Profile::Default => "default",
            Profile::Fd => "fd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SampleId {
    pub curve_id: usize,
    pub sample_id: usize,
}

/// Error summary of one tracked quantity. Relative errors use a unit floor,
/// `|a−b| / max(|b|, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub count: usize,
    /// Errors that came out NaN or infinite; any of them fails the gate.
    pub nonfinite: usize,
    pub max_abs: f64,
    pub max_rel: f64,
    pub rms_rel: f64,
    pub worst: Option<SampleId>,
    pub limit: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub name: String,
    pub steps: Vec<f64>,
    /// Largest error over all samples at each step.
    pub errors: Vec<f64>,
    /// Orders between consecutive steps.
    pub orders: Vec<f64>,
    /// Least-squares slope of `log error` against `log h`.
    pub fitted_order: f64,
    pub expected_order: f64,
    /// Bound on the error at the smallest step.
    pub limit: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleErrors {
    pub curve_id: usize,
    pub sample_id: usize,
    pub errors: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Report {
    pub command: String,
    pub views: Vec<usize>,
    pub frame: Option<usize>,
    pub profile: String,
    pub tolerance: f64,
    pub quantities: BTreeMap<String, Stats>,
    pub by_family: BTreeMap<String, BTreeMap<String, Stats>>,
    /// Closed-form residuals, each with its own limit.
    pub residuals: BTreeMap<String, Stats>,
    pub convergence: Vec<Convergence>,
    /// Values reported for context only.
    pub info: BTreeMap<String, f64>,
    pub skipped: BTreeMap<String, usize>,
    /// Samples missing from each frame.
    pub dropped: Vec<usize>,
    pub failures: Vec<String>,
    pub samples: Vec<SampleErrors>,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
struct Acc {
    count: usize,
    nonfinite: usize,
    max_abs: f64,
    max_rel: f64,
    sum_sq: f64,
    worst: Option<SampleId>,
}

impl Acc {
    fn push(&mut self, id: Option<SampleId>, abs: f64, rel: f64) {
        self.count += 1;
        if !(abs.is_finite() && rel.is_finite()) {
            self.nonfinite += 1;
            self.worst = self.worst.or(id);
            return;
        }
        self.max_abs = self.max_abs.max(abs);
        self.sum_sq += rel * rel;
        if rel > self.max_rel || self.worst.is_none() && rel >= self.max_rel {
            self.max_rel = rel;
            self.worst = id;
        }
    }

    fn finish(&self, limit: f64, gate_rel: bool) -> Stats {
        let v = if gate_rel { self.max_rel } else { self.max_abs };
        Stats {
            count: self.count,
            nonfinite: self.nonfinite,
            max_abs: self.max_abs,
            max_rel: self.max_rel,
            rms_rel: if self.count == 0 {
                0.0
            } else {
                (self.sum_sq / self.count as f64).sqrt()
            },
            worst: self.worst,
            limit,
            pass: self.nonfinite == 0 && v <= limit,
        }
    }
}

/// Accumulates errors and produces a [`Report`].
#[derive(Debug, Default)]
pub struct ReportBuilder {
    pub report: Report,
    quantities: BTreeMap<String, Acc>,
    families: BTreeMap<(String, String), Acc>,
    residuals: BTreeMap<String, (Acc, f64)>,
    samples: BTreeMap<SampleId, BTreeMap<String, f64>>,
}

pub fn rel(a: f64, b: f64) -> (f64, f64) {
    let abs = (a - b).abs();
    (abs, abs / b.abs().max(1.0))
}

pub fn vrel(a: &mvg_core::Vec3, b: &mvg_core::Vec3) -> (f64, f64) {
    let abs = (a - b).norm();
    (abs, abs / b.norm().max(1.0))
}

impl ReportBuilder {
    pub fn new(command: &str, profile: Profile) -> ReportBuilder {
        let mut b = ReportBuilder::default();
        b.report.command = command.to_string();
        b.report.profile = profile.name().to_string();
        b.report.tolerance = profile.tolerance();
        b
    }

    /// Records an error gated by the profile tolerance. With `per_sample`
    /// the value also goes to the per-sample table used for plots.
    pub fn quantity(&mut self, name: &str, id: SampleId, (abs, rel): (f64, f64), per_sample: bool) {
        self.quantities
            .entry(name.to_string())
            .or_default()
            .push(Some(id), abs, rel);
        if per_sample {
            self.samples.entry(id).or_default().insert(name.to_string(), rel);
        }
    }

    pub fn family(&mut self, family: &str, name: &str, id: SampleId, err: (f64, f64)) {
        self.families
            .entry((family.to_string(), name.to_string()))
            .or_default()
            .push(Some(id), err.0, err.1);
    }

    /// Records a residual gated by its own `limit` on the absolute value.
    pub fn residual(&mut self, name: &str, id: Option<SampleId>, value: f64, limit: f64) {
        let e = self
            .residuals
            .entry(name.to_string())
            .or_insert_with(|| (Acc::default(), limit));
        e.0.push(id, value.abs(), value.abs());
    }

    pub fn convergence(&mut self, name: &str, steps: &[f64], errors: Vec<f64>, expected: f64, limit: f64) {
        let orders: Vec<f64> = errors
            .windows(2)
            .zip(steps.windows(2))
            .map(|(e, h)| (e[0] / e[1]).ln() / (h[0] / h[1]).ln())
            .collect();
        let fitted = fitted_slope(steps, &errors);
        let last = *errors.last().unwrap_or(&f64::NAN);
        let pass = (fitted - expected).abs() <= 0.2 && last <= limit;
        self.report.convergence.push(Convergence {
            name: name.to_string(),
            steps: steps.to_vec(),
            errors,
            orders,
            fitted_order: if fitted.is_finite() { fitted } else { 0.0 },
            expected_order: expected,
            limit,
            pass,
        });
    }

    pub fn skip(&mut self, reason: &str) {
        *self.report.skipped.entry(reason.to_string()).or_default() += 1;
    }

    pub fn fail(&mut self, message: String) {
        self.report.failures.push(message);
    }

    pub fn info(&mut self, name: &str, value: f64) {
        let e = self.report.info.entry(name.to_string()).or_insert(0.0);
        *e = e.max(value);
    }

    pub fn finish(mut self) -> Report {
        let tol = self.report.tolerance;
        let r = &mut self.report;
        r.quantities = self
            .quantities
            .iter()
            .map(|(k, a)| (k.clone(), a.finish(tol, true)))
            .collect();
        for ((fam, q), a) in &self.families {
            r.by_family
                .entry(fam.clone())
                .or_default()
                .insert(q.clone(), a.finish(tol, true));
        }
        r.residuals = self
            .residuals
            .iter()
            .map(|(k, (a, l))| (k.clone(), a.finish(*l, false)))
            .collect();
        r.samples = self
            .samples
            .into_iter()
            .map(|(id, errors)| SampleErrors {
                curve_id: id.curve_id,
                sample_id: id.sample_id,
                errors,
            })
            .collect();
        // family tables are breakdowns of gated quantities, not gates themselves
        r.pass = r.failures.is_empty()
            && r.quantities.values().all(|s| s.pass)
            && r.residuals.values().all(|s| s.pass)
            && r.convergence.iter().all(|c| c.pass);
        self.report
    }
}

fn fitted_slope(steps: &[f64], errors: &[f64]) -> f64 {
    let n = steps.len() as f64;
    let xs: Vec<f64> = steps.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

impl Report {
    /// Human-readable table.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let mark = |p: bool| if p { "ok  " } else { "FAIL" };
        for (k, s) in self.quantities.iter().chain(&self.residuals) {
            out += &format!(
                "{} {k:<34} n={:<5} max_rel={:.3e} max_abs={:.3e} limit={:.0e}\n",
                mark(s.pass),
                s.count,
                s.max_rel,
                s.max_abs,
                s.limit
            );
        }
        for c in &self.convergence {
            out += &format!(
                "{} {:<34} order={:.3} errors={:?}\n",
                mark(c.pass),
                c.name,
                c.fitted_order,
                c.errors.iter().map(|e| format!("{e:.2e}")).collect::<Vec<_>>()
            );
        }
        for (k, v) in &self.info {
            out += &format!("info {k:<34} {v:.3e}\n");
        }
        for (k, v) in &self.skipped {
            out += &format!("skip {k:<34} {v}\n");
        }
        for f in &self.failures {
            out += &format!("FAIL {f}\n");
        }
        out += &format!("{}\n", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}
