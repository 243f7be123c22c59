//! The four experiments behind the subcommands.

use std::path::{Path, PathBuf};

use crate::dispersion_lab::{
    caustic_period, caustic_time_grid, envelope_plot, geometric_times, sup_norm_envelope,
    write_envelope_csv, DispersionEnvelope, SpatialGridSpec,
};
use crate::error::Error;
use crate::green_sum::GreenEvaluator;
use crate::plot::{LinePlot, Marker};
use crate::special_airy::{phase_l, AiryZeroTable};
use crate::strichartz_lab::{scaling_level, ScalingPlan, WINDOW_RULE};
use crate::verification::{identity_suite, summarize};

use super::config::{ExperimentConfig, ExperimentKind};
use super::report::Table;

/// Relative tolerance between the FFT scan and the direct quadrature at the sup point.
pub const CROSS_CHECK_TOLERANCE: f64 = 5e-3;
/// Samples in the geometric early-time section of a dispersion scan.
pub const EARLY_SAMPLES: usize = 16;
/// Start of the early-time section, in units of `a`.
pub const EARLY_START: f64 = 0.05;
/// Largest accepted ratio between quotients at consecutive `h`.
pub const QUOTIENT_RATIO_LIMIT: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Usage(String),
    Accuracy(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Accuracy { .. } | Error::NumericalConsistency { .. } => Self::Accuracy(e.to_string()),
            Error::Domain(_) | Error::Range { .. } => Self::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::Usage(format!("output: {e}"))
    }
}

/// Files written and invariant violations found by one run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub violations: Vec<String>,
    /// Human-readable summary lines for the terminal.
    pub summary: Vec<String>,
}

impl Outcome {
    fn table(&mut self, cfg: &ExperimentConfig, name: &str, table: &Table) -> Result<(), Failure> {
        if !table.all_finite() {
            self.violations.push(format!("{name}: non-finite value"));
        }
        let path = cfg.out.join(name);
        table.write(&path, &cfg.header())?;
        self.files.push(path);
        Ok(())
    }

    fn plot(&mut self, cfg: &ExperimentConfig, name: &str, plot: &LinePlot) -> Result<(), Failure> {
        let path = cfg.out.join(name);
        let mut svg = String::new();
        for (k, v) in cfg.header() {
            svg.push_str(&format!("<!-- {k}={v} -->\n"));
        }
        svg.push_str(&plot.to_svg());
        std::fs::write(&path, svg)?;
        self.files.push(path);
        Ok(())
    }

    fn envelope(&mut self, cfg: &ExperimentConfig, name: &str, env: &DispersionEnvelope<f64>) -> Result<(), Failure> {
        let finite = env.sup.iter().chain(&env.refined).chain(env.bound.iter().map(|b| &b.envelope)).all(|v| v.is_finite());
        if !finite {
            self.violations.push(format!("{name}: non-finite value"));
        }
        let path = cfg.out.join(name);
        let mut buf = Vec::new();
        write_envelope_csv(env, &mut buf, &cfg.header())?;
        std::fs::write(&path, buf)?;
        self.files.push(path);
        Ok(())
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Outcome, Failure> {
    std::fs::create_dir_all(&cfg.out)
        .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", cfg.out.display())))?;
    match cfg.kind {
        ExperimentKind::VerifyIdentities => verify_identities(cfg),
        ExperimentKind::DispersionScan => dispersion_scan(cfg),
        ExperimentKind::CausticScan => caustic_scan(cfg),
        ExperimentKind::StrichartzScaling => strichartz_scaling(cfg),
    }
}

fn verify_identities(cfg: &ExperimentConfig) -> Result<Outcome, Failure> {
    let checks = identity_suite(cfg.seed)?;
    let mut out = Outcome::default();
    let mut t = Table::new(&["family", "label", "value", "target", "error", "tolerance", "gating", "status"]);
    for c in &checks {
        let status = if c.passed() { "pass" } else { "fail" };
        t.push(vec![
            c.family.into(),
            c.label.clone().into(),
            c.value.into(),
            c.target.into(),
            c.error.into(),
            c.tolerance.into(),
            c.gating.into(),
            status.into(),
        ]);
    }
    out.table(cfg, "identities.csv", &t)?;
    for s in summarize(&checks) {
        let status = match (s.passed, s.gating) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "fail (informational)",
        };
        out.summary
            .push(format!("{:<32} n={:<3} worst={:.3e} tol={:.1e} {status}", s.family, s.count, s.worst_error, s.tolerance));
        if s.gating && !s.passed {
            out.violations.push(format!("identity '{}' failed: worst error {:.3e}", s.family, s.worst_error));
        }
    }

    // L(omega) / 2 pi crosses each integer at an Airy zero
    let table = AiryZeroTable::<f64>::new(8)?;
    let w_end = table.omega(8) + 0.5;
    let pts: Vec<(f64, f64)> = (0..=400)
        .map(|i| {
            let w = -2.0 + (w_end + 2.0) * i as f64 / 400.0;
            Ok((w, phase_l(w)? / std::f64::consts::TAU))
        })
        .collect::<Result<_, Error>>()?;
    let mut plot = LinePlot::new("Airy phase", "omega", "L(omega) / 2 pi").line("L / 2 pi", pts, false);
    plot.markers = table
        .zeros()
        .iter()
        .enumerate()
        .map(|(i, &w)| Marker {
            x: w,
            y: (i + 1) as f64,
            label: format!("omega_{}", i + 1),
        })
        .collect();
    out.plot(cfg, "identities.svg", &plot)?;
    Ok(out)
}

fn grid(cfg: &ExperimentConfig) -> SpatialGridSpec<f64> {
    SpatialGridSpec::with_fine_step(cfg.fine_step)
}

/// `|G|` at the sampled maximum, recomputed by direct quadrature.
fn cross_check(cfg: &ExperimentConfig, env: &DispersionEnvelope<f64>, out: &mut Outcome) -> Result<(f64, f64), Failure> {
    let i = (0..env.len()).fold(0, |b, i| if env.sup[i] > env.sup[b] { i } else { b });
    let sc = cfg.semiclassical.clone();
    let y = if sc.dim() == 2 { vec![env.y_at[i]] } else { vec![env.y_at[i], 0.0] };
    let x_max = env.xs[env.xs.len() - 1];
    let direct = GreenEvaluator::new(sc, x_max)?.evaluate(env.ts[i], env.x_at[i], &y)?.value.norm();
    let rel = (direct - env.sup[i]).abs() / direct;
    if !(rel <= CROSS_CHECK_TOLERANCE) {
        out.violations.push(format!(
            "scan and direct quadrature disagree at t = {}: {} vs {direct} (relative {rel:.2e})",
            env.ts[i], env.sup[i]
        ));
    }
    Ok((direct, rel))
}

fn dispersion_scan(cfg: &ExperimentConfig) -> Result<Outcome, Failure> {
    let sc = &cfg.semiclassical;
    let (a, t_max) = (sc.a, sc.t_max);
    let t_early = (a * 0.995).min(t_max);
    let mut ts = geometric_times(a * EARLY_START, t_early, EARLY_SAMPLES)?;
    ts.extend(caustic_time_grid(a, t_max, cfg.per_period)?.into_iter().filter(|&t| t > t_early));
    let env = sup_norm_envelope(sc, &ts, &grid(cfg))?;
    let mut out = Outcome::default();
    out.envelope(cfg, "dispersion.csv", &env)?;
    out.plot(cfg, "dispersion.svg", &envelope_plot(&env))?;

    let (direct, rel) = cross_check(cfg, &env, &mut out)?;
    let decay = env.decay_fit(a * EARLY_START * 0.999, a)?;
    let c_fit = env.upper_constant();
    let mut t = Table::new(&["quantity", "value"]);
    t.push(vec!["upper_constant".into(), c_fit.into()]);
    t.push(vec!["early_decay_slope".into(), decay.slope.into()]);
    t.push(vec!["early_decay_residual".into(), decay.residual.into()]);
    t.push(vec!["free_slope".into(), (-(sc.dim() as f64 - 1.0) / 2.0).into()]);
    let p = caustic_period(a);
    if p <= t_max {
        t.push(vec!["source_ratio_t1".into(), env.source_ratio_at(p).into()]);
    }
    t.push(vec!["cross_check_direct".into(), direct.into()]);
    t.push(vec!["cross_check_relative".into(), rel.into()]);
    out.table(cfg, "dispersion_summary.csv", &t)?;
    out.summary.push(format!(
        "{} times, {} depths; C_fit = {c_fit:.4}; early slope = {:.3} (free {:.1}); scan vs direct {rel:.1e}",
        env.len(),
        env.xs.len(),
        decay.slope,
        -(sc.dim() as f64 - 1.0) / 2.0
    ));
    Ok(out)
}

fn caustic_scan(cfg: &ExperimentConfig) -> Result<Outcome, Failure> {
    let sc = &cfg.semiclassical;
    let ts = caustic_time_grid(sc.a, sc.t_max, cfg.per_period)?;
    let env = sup_norm_envelope(sc, &ts, &grid(cfg))?;
    let mut out = Outcome::default();
    out.envelope(cfg, "caustic.csv", &env)?;
    out.plot(cfg, "caustic.svg", &envelope_plot(&env))?;
    cross_check(cfg, &env, &mut out)?;

    let mut t = Table::new(&["n", "t_n", "lo", "hi", "detected", "peak_t", "peak_S", "prominence", "argmax_t"]);
    for iv in &env.schedule.intervals {
        let inside: Vec<usize> = (0..env.len()).filter(|&i| iv.contains(env.ts[i])).collect();
        let argmax = inside.iter().copied().fold(None, |b: Option<usize>, i| match b {
            Some(j) if env.sup[j] >= env.sup[i] => Some(j),
            _ => Some(i),
        });
        let peak = env.peak_in(iv.n);
        t.push(vec![
            iv.n.into(),
            iv.t_n.into(),
            iv.lo.into(),
            iv.hi.into(),
            peak.is_some().into(),
            peak.map_or(0.0, |p| p.t).into(),
            peak.map_or(0.0, |p| p.sup).into(),
            peak.map_or(0.0, |p| p.prominence).into(),
            argmax.map_or(0.0, |i| env.ts[i]).into(),
        ]);
        let complete = iv.hi <= sc.t_max;
        out.summary.push(match peak {
            Some(p) => format!("I_{}: peak at t = {:.4} (t_n = {:.4}, prominence {:.2})", iv.n, p.t, iv.t_n, p.prominence),
            None => format!("I_{}: no peak above the prominence threshold (t_n = {:.4})", iv.n, iv.t_n),
        });
        if complete && peak.is_none() {
            out.violations.push(format!("no envelope peak detected inside I_{}", iv.n));
        }
    }
    out.table(cfg, "caustic_peaks.csv", &t)?;

    let period = caustic_period(sc.a);
    let mut s = Table::new(&["quantity", "value"]);
    s.push(vec!["period_closed_form".into(), period.into()]);
    if let Some(fit) = env.period_fit() {
        s.push(vec!["period_fit".into(), fit.into()]);
        s.push(vec!["period_relative_error".into(), ((fit - period) / period).into()]);
        out.summary.push(format!("period fit {fit:.4} vs closed form {period:.4}"));
    }
    for pk in env.peaks.iter().filter(|p| p.n.is_none()) {
        s.push(vec!["peak_outside_intervals_t".into(), pk.t.into()]);
    }
    out.table(cfg, "caustic_summary.csv", &s)?;
    Ok(out)
}

fn strichartz_scaling(cfg: &ExperimentConfig) -> Result<Outcome, Failure> {
    let mut out = Outcome::default();
    let mut t = Table::new(&[
        "h",
        "norm",
        "quotient",
        "norm_relative_change",
        "ratio_to_previous",
        "regular_slope",
        "singular_statistic",
        "mask_fraction",
    ]);
    let mut quotients: Vec<(f64, f64)> = Vec::new();
    let plan = ScalingPlan::standard();
    for (idx, &h) in cfg.h_sweep().iter().enumerate() {
        let mut sc = cfg.semiclassical.clone();
        sc.h = h;
        let lvl = scaling_level(&sc, &grid(cfg), &plan)?;
        out.envelope(cfg, &format!("strichartz_envelope_{idx}.csv"), &lvl.envelope)?;
        let quotient = lvl.quotient;
        let ratio = quotients.last().map_or(1.0, |&(_, q)| quotient / q);
        if !(ratio < QUOTIENT_RATIO_LIMIT && ratio > 1.0 / QUOTIENT_RATIO_LIMIT) {
            out.violations.push(format!("quotient changes by {ratio:.3} between consecutive h at h = {h}"));
        }
        t.push(vec![
            h.into(),
            lvl.norm.value.into(),
            quotient.into(),
            lvl.norm.relative_change.into(),
            ratio.into(),
            lvl.split.regular_fit.slope.into(),
            lvl.split.singular_statistic.into(),
            lvl.split.mask_fraction.into(),
        ]);
        out.summary.push(format!(
            "h = 2^{:.0}: quotient {quotient:.4e} (x{ratio:.3}), regular slope {:.3}, singular statistic {:.3e}",
            h.log2(),
            lvl.split.regular_fit.slope,
            lvl.split.singular_statistic
        ));
        quotients.push((h, quotient));
    }
    out.table(cfg, "strichartz.csv", &t)?;
    let mut plot = LinePlot::new(
        &format!("h^(13/6) ||S||_(L^12/5 [0,1]); window {WINDOW_RULE}"),
        "h",
        "quotient",
    )
    .line("quotient", quotients, false);
    plot.log_x = true;
    plot.log_y = true;
    out.plot(cfg, "strichartz.svg", &plot)?;
    Ok(out)
}

/// Names of the CSV files an experiment writes, for reproducibility checks.
pub fn csv_files(out: &Outcome) -> Vec<&Path> {
    out.files.iter().filter(|p| p.extension().is_some_and(|e| e == "csv")).map(|p| p.as_path()).collect()
}
