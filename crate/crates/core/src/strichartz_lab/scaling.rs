//! One level of a dyadic Strichartz sweep: envelope, quotient and kernel split.

use crate::dispersion_lab::{graded_times, sup_norm_envelope, DispersionEnvelope, SpatialGridSpec};
use crate::error::Result;
use crate::green_sum::SemiclassicalConfig;
use crate::scalar::Real;

use super::norms::{mixed_norm, MixedNorm, SpaceTimeField};
use super::split::{kernel_split, split_bounds_check, SplitReport};

/// Exponents and sampling of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPlan<T> {
    /// Time exponent `q` of `||S||_{L^q_t}`.
    pub q: T,
    /// `2 beta`; the quotient is `h^{2 beta} ||S||`.
    pub two_beta: T,
    /// Integrability exponent of the singular part.
    pub p: T,
    /// The norm is taken over `(0, norm_end]`.
    pub norm_end: T,
    /// First sample, in units of `h`.
    pub start: T,
    /// Geometric section up to `switch` with ratio `ratio`, uniform `step` after.
    pub switch: T,
    pub ratio: T,
    pub step: T,
    /// The regular-part decay is fitted on `[fit_start, norm_end]`.
    pub fit_start: T,
}

impl<T: Real> ScalingPlan<T> {
    /// `q = 12/5`, `2 beta = 13/6` (sup norm, `d = 3`), `p = 2.9` on `[0, 1]`.
    pub fn standard() -> Self {
        Self {
            q: T::lit(12.0 / 5.0),
            two_beta: T::lit(13.0 / 6.0),
            p: T::lit(2.9),
            norm_end: T::one(),
            start: T::lit(1.0 / 16.0),
            switch: T::lit(0.1),
            ratio: T::lit(1.2),
            step: T::lit(0.02),
            fit_start: T::lit(0.05),
        }
    }

    /// Samples from `start h` to `t_max`.
    pub fn times(&self, h: T, t_max: T) -> Result<Vec<T>> {
        graded_times(self.start * h, self.switch, self.ratio, self.step, t_max)
    }
}

#[derive(Debug, Clone)]
pub struct ScalingLevel<T> {
    pub h: T,
    pub envelope: DispersionEnvelope<T>,
    pub norm: MixedNorm<T>,
    pub quotient: T,
    pub split: SplitReport<T>,
}

/// Scans `cfg` on the plan's time grid up to `cfg.t_max` and evaluates the
/// quotient and the kernel split.
pub fn scaling_level<T: Real>(
    cfg: &SemiclassicalConfig<T>,
    grid: &SpatialGridSpec<T>,
    plan: &ScalingPlan<T>,
) -> Result<ScalingLevel<T>> {
    let h = cfg.h;
    let ts = plan.times(h, cfg.t_max)?;
    let env = sup_norm_envelope(cfg, &ts, grid)?;
    let end = plan.norm_end * (T::one() + T::epsilon() * T::lit(64.0));
    let (tt, vv): (Vec<T>, Vec<T>) = env
        .ts
        .iter()
        .zip(&env.sup)
        .filter(|(t, _)| **t <= end)
        .map(|(t, s)| (*t, *s))
        .unzip();
    let norm = mixed_norm(SpaceTimeField::SpatialNorms { ts: &tt, values: &vv }, plan.q, T::infinity())?;
    let quotient = h.powf(plan.two_beta) * norm.value;
    let split = split_bounds_check(
        &kernel_split(&env, &env.schedule, h),
        plan.two_beta,
        plan.fit_start,
        plan.norm_end,
        plan.p,
    )?;
    Ok(ScalingLevel {
        h,
        envelope: env,
        norm,
        quotient,
        split,
    })
}
