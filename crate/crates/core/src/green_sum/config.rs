use crate::error::{domain, Result};
use crate::model_modes::ModelMetric;
use crate::scalar::Real;

use super::cutoff::CutoffSpec;

/// Time evolution applied to each mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagator {
    /// `e^{+it sqrt(lambda)}`
    Plus,
    /// `e^{-it sqrt(lambda)}`
    Minus,
    /// `cos(t sqrt(lambda))`
    Cosine,
}

impl Propagator {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Plus => "plus",
            Self::Minus => "minus",
            Self::Cosine => "cosine",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "plus" | "+1" | "+" => Some(Self::Plus),
            "minus" | "-1" | "-" => Some(Self::Minus),
            "cosine" | "cos" => Some(Self::Cosine),
            _ => None,
        }
    }
}

/// Parameters of one semiclassical Green-function experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiclassicalConfig<T> {
    pub h: T,
    /// Source depth `x = a`.
    pub a: T,
    pub metric: ModelMetric<T>,
    /// `psi(|eta|)`, the tangential frequency cutoff of the datum.
    pub cutoff: CutoffSpec<T>,
    /// `chi(h sqrt(lambda))`, the time-frequency localization; `None` sums all modes up to the hard cap.
    pub frequency_cutoff: Option<CutoffSpec<T>>,
    pub propagator: Propagator,
    /// Extra modes kept on each side of the computed truncation range.
    pub k_margin: usize,
    /// Quadrature nodes per oscillation, at least 4.
    pub quad_density: T,
    /// Largest `|t|` accepted by the evaluators.
    pub t_max: T,
}

impl<T: Real> SemiclassicalConfig<T> {
    /// Isotropic metric, standard cutoffs, `e^{+it sqrt(lambda)}`, `quad_density = 6`, `t_max = 8`.
    pub fn new(h: T, a: T, dim: usize) -> Result<Self> {
        let cfg = Self {
            h,
            a,
            metric: ModelMetric::identity(dim)?,
            cutoff: CutoffSpec::standard(),
            frequency_cutoff: Some(CutoffSpec::standard()),
            propagator: Propagator::Plus,
            k_margin: 2,
            quad_density: T::lit(6.0),
            t_max: T::lit(8.0),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_metric(mut self, metric: ModelMetric<T>) -> Result<Self> {
        self.metric = metric;
        self.validate()?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn validate(&self) -> Result<()> {
        let one = T::one();
        if !(self.h > T::zero() && self.h <= one) {
            return domain(format!("h = {} outside (0, 1]", self.h));
        }
        if !(self.a > T::zero() && self.a <= one) {
            return domain(format!("a = {} outside (0, 1]", self.a));
        }
        if !(self.quad_density >= T::lit(4.0)) {
            return domain(format!("quad_density = {} below 4", self.quad_density));
        }
        if !(self.t_max > T::zero() && self.t_max.is_finite()) {
            return domain(format!("t_max = {} must be positive", self.t_max));
        }
        if self.cutoff.s_min <= T::zero() {
            return domain("cutoff support must stay away from eta = 0");
        }
        Ok(())
    }

    /// `key=value` pairs describing the configuration, in a fixed order.
    pub fn header_pairs(&self) -> Vec<(String, String)> {
        let coeffs = self
            .metric
            .coeffs()
            .iter()
            .map(|c| format!("{c}"))
            .collect::<Vec<_>>()
            .join(",");
        let chi = match &self.frequency_cutoff {
            Some(c) => format!("{}({},{})", c.profile_name(), c.s_min, c.s_max),
            None => "none".to_string(),
        };
        vec![
            ("h".into(), format!("{}", self.h)),
            ("a".into(), format!("{}", self.a)),
            ("dim".into(), format!("{}", self.dim())),
            ("metric".into(), coeffs),
            (
                "cutoff".into(),
                format!("{}({},{})", self.cutoff.profile_name(), self.cutoff.s_min, self.cutoff.s_max),
            ),
            ("frequency_cutoff".into(), chi),
            ("propagator".into(), self.propagator.name().into()),
            ("k_margin".into(), format!("{}", self.k_margin)),
            ("quad_density".into(), format!("{}", self.quad_density)),
            ("t_max".into(), format!("{}", self.t_max)),
        ]
    }
}
