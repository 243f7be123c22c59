//! Experiment configuration: flat `key=value` files merged with flag overrides.

use std::path::{Path, PathBuf};

use crate::dispersion_lab::caustic_period;
use crate::green_sum::SemiclassicalConfig;
use crate::model_modes::ModelMetric;

/// Keys accepted in configuration files, in header order.
pub const KEYS: [&str; 11] = [
    "h",
    "a",
    "dim",
    "metric",
    "tmax",
    "quad_density",
    "seed",
    "fine_step",
    "per_period",
    "h_coarse",
    "out",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    VerifyIdentities,
    DispersionScan,
    CausticScan,
    StrichartzScaling,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::VerifyIdentities => "verify-identities",
            Self::DispersionScan => "dispersion-scan",
            Self::CausticScan => "caustic-scan",
            Self::StrichartzScaling => "strichartz-scaling",
        }
    }
}

/// Values set explicitly by a file or a flag; unset keys take per-experiment defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub h: Option<f64>,
    pub a: Option<f64>,
    pub dim: Option<usize>,
    pub metric: Option<Vec<f64>>,
    pub tmax: Option<f64>,
    pub quad_density: Option<f64>,
    pub seed: Option<u64>,
    pub fine_step: Option<f64>,
    pub per_period: Option<usize>,
    pub h_coarse: Option<f64>,
    pub out: Option<PathBuf>,
}

fn parse<V: std::str::FromStr>(key: &str, value: &str) -> Result<V, String> {
    value.trim().parse().map_err(|_| format!("cannot parse {key}={value}"))
}

pub fn parse_metric(value: &str) -> Result<Vec<f64>, String> {
    value.split(',').map(|c| parse("metric", c)).collect()
}

impl Overrides {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "h" => self.h = Some(parse(key, value)?),
            "a" => self.a = Some(parse(key, value)?),
            "dim" => self.dim = Some(parse(key, value)?),
            "metric" => self.metric = Some(parse_metric(value)?),
            "tmax" => self.tmax = Some(parse(key, value)?),
            "quad_density" => self.quad_density = Some(parse(key, value)?),
            "seed" => self.seed = Some(parse(key, value)?),
            "fine_step" => self.fine_step = Some(parse(key, value)?),
            "per_period" => self.per_period = Some(parse(key, value)?),
            "h_coarse" => self.h_coarse = Some(parse(key, value)?),
            "out" => self.out = Some(PathBuf::from(value.trim())),
            _ => return Err(format!("unknown configuration key '{key}'")),
        }
        Ok(())
    }

    /// `key=value` lines; blank lines and `#` comments are skipped.
    pub fn from_text(text: &str) -> Result<Self, String> {
        let mut o = Self::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value, got '{line}'", i + 1))?;
            o.set(k.trim(), v)?;
        }
        Ok(o)
    }

    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::from_text(&text)
    }

    /// `other` wins wherever it is set.
    pub fn merged(self, other: Overrides) -> Self {
        Self {
            h: other.h.or(self.h),
            a: other.a.or(self.a),
            dim: other.dim.or(self.dim),
            metric: other.metric.or(self.metric),
            tmax: other.tmax.or(self.tmax),
            quad_density: other.quad_density.or(self.quad_density),
            seed: other.seed.or(self.seed),
            fine_step: other.fine_step.or(self.fine_step),
            per_period: other.per_period.or(self.per_period),
            h_coarse: other.h_coarse.or(self.h_coarse),
            out: other.out.or(self.out),
        }
    }
}

/// Fully resolved and validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub semiclassical: SemiclassicalConfig<f64>,
    pub out: PathBuf,
    pub seed: u64,
    /// Fine step of the normal grid, in units of `h`.
    pub fine_step: f64,
    /// Time samples per caustic period.
    pub per_period: usize,
    /// Coarsest `h` of a Strichartz sweep; the sweep halves down to `h`.
    pub h_coarse: f64,
}

impl ExperimentConfig {
    /// Applies the per-experiment defaults and validates every range.
    pub fn resolve(kind: ExperimentKind, o: Overrides) -> Result<Self, String> {
        let strichartz = kind == ExperimentKind::StrichartzScaling;
        let h = o.h.unwrap_or(if strichartz { 2f64.powi(-9) } else { 2f64.powi(-8) });
        let a = o.a.unwrap_or(0.2);
        let dim = o.dim.unwrap_or(if strichartz { 3 } else { 2 });
        let metric = match o.metric {
            Some(c) => ModelMetric::new(dim, c),
            None => ModelMetric::identity(dim),
        }
        .map_err(|e| e.to_string())?;
        let mut sc = SemiclassicalConfig::new(h, a, dim)
            .and_then(|c| c.with_metric(metric))
            .map_err(|e| e.to_string())?;
        if let Some(q) = o.quad_density {
            sc.quad_density = q;
        }
        let period = caustic_period(a);
        sc.t_max = o.tmax.unwrap_or(match kind {
            ExperimentKind::CausticScan => 3.0 * period * (1.0 + a),
            ExperimentKind::DispersionScan => period * (1.0 + a),
            // covers the first singular window |t - t_1| <= a^{3/2}
            ExperimentKind::StrichartzScaling => (period + a.powf(1.5)).max(1.0),
            ExperimentKind::VerifyIdentities => sc.t_max,
        });
        sc.validate().map_err(|e| e.to_string())?;
        let fine_step = o.fine_step.unwrap_or(if strichartz { 1.0 } else { 0.125 });
        if !(fine_step > 0.0 && fine_step <= 4.0) {
            return Err(format!("fine_step = {fine_step} outside (0, 4]"));
        }
        let per_period = o.per_period.unwrap_or(20);
        if per_period < 4 {
            return Err(format!("per_period = {per_period} below 4"));
        }
        let h_coarse = o.h_coarse.unwrap_or(2f64.powi(-7).max(h));
        if !(h_coarse >= h && h_coarse <= 1.0) {
            return Err(format!("h_coarse = {h_coarse} must lie in [h, 1]"));
        }
        if strichartz && sc.t_max < 1.0 {
            return Err("strichartz-scaling integrates over [0, 1]; tmax must be at least 1".into());
        }
        Ok(Self {
            kind,
            semiclassical: sc,
            out: o.out.unwrap_or_else(|| PathBuf::from("out")),
            seed: o.seed.unwrap_or(0),
            fine_step,
            per_period,
            h_coarse,
        })
    }

    /// The effective configuration as ordered `key=value` pairs, echoed in every output file.
    pub fn header(&self) -> Vec<(String, String)> {
        let mut out = vec![("experiment".to_string(), self.kind.name().to_string())];
        out.extend(self.semiclassical.header_pairs());
        out.push(("seed".into(), self.seed.to_string()));
        out.push(("fine_step".into(), format!("{}", self.fine_step)));
        out.push(("per_period".into(), self.per_period.to_string()));
        out.push(("h_coarse".into(), format!("{}", self.h_coarse)));
        out.push(("out".into(), self.out.display().to_string()));
        out
    }

    /// The `h` values of a Strichartz sweep, coarse to fine.
    pub fn h_sweep(&self) -> Vec<f64> {
        let h = self.semiclassical.h;
        let mut hs = vec![self.h_coarse];
        while hs[hs.len() - 1] * 0.5 >= h * (1.0 - 1e-12) {
            hs.push(hs[hs.len() - 1] * 0.5);
        }
        hs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = Overrides::from_text("# comment\nh = 0.0078125\na=0.1\n\nmetric=1\n").unwrap();
        let flags = Overrides {
            a: Some(0.3),
            ..Default::default()
        };
        let cfg = ExperimentConfig::resolve(ExperimentKind::CausticScan, file.merged(flags)).unwrap();
        assert_eq!(cfg.semiclassical.h, 0.0078125);
        assert_eq!(cfg.semiclassical.a, 0.3);
        assert!((cfg.semiclassical.t_max - 3.0 * caustic_period(0.3) * 1.3).abs() < 1e-12);
        let header = cfg.header();
        assert_eq!(header[0], ("experiment".to_string(), "caustic-scan".to_string()));
        assert!(header.iter().any(|(k, v)| k == "a" && v == "0.3"));
    }

    #[test]
    fn bad_values_are_usage_errors() {
        assert!(Overrides::from_text("nonsense=1").is_err());
        assert!(Overrides::from_text("h").is_err());
        assert!(Overrides::from_text("h=abc").is_err());
        let bad_h = Overrides {
            h: Some(2.0),
            ..Default::default()
        };
        assert!(ExperimentConfig::resolve(ExperimentKind::DispersionScan, bad_h).is_err());
        let bad_metric = Overrides {
            dim: Some(3),
            metric: Some(vec![1.0, 2.0, 2.0, 1.0]),
            ..Default::default()
        };
        assert!(ExperimentConfig::resolve(ExperimentKind::DispersionScan, bad_metric).is_err());
    }

    #[test]
    fn strichartz_defaults_and_sweep() {
        let cfg = ExperimentConfig::resolve(ExperimentKind::StrichartzScaling, Overrides::default()).unwrap();
        assert_eq!(cfg.semiclassical.dim(), 3);
        let hs = cfg.h_sweep();
        assert_eq!(hs, vec![2f64.powi(-7), 2f64.powi(-8), 2f64.powi(-9)]);
    }
}
