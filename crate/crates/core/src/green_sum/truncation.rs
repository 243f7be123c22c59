use crate::scalar::Real;
use crate::special_airy::{airy_zero, MAX_ZERO_INDEX};

use super::config::SemiclassicalConfig;

/// Hard cap on the number of modes in any sum.
pub const K_HARD: usize = MAX_ZERO_INDEX;

/// Airy argument beyond which `Ai` is below `1e-14` of its peak.
pub const EVANESCENT_ARGUMENT: f64 = 13.0;

/// Inclusive mode range `k_min..=k_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeRange {
    pub k_min: usize,
    pub k_max: usize,
}

impl ModeRange {
    pub fn len(&self) -> usize {
        self.k_max + 1 - self.k_min
    }

    pub fn is_empty(&self) -> bool {
        self.k_max < self.k_min
    }

    pub fn contains(&self, k: usize) -> bool {
        k >= self.k_min && k <= self.k_max
    }
}

/// Number of Airy zeros `omega_k < w`, from the asymptotic inverse refined against the true zeros.
fn zeros_below<T: Real>(w: T) -> usize {
    if w <= T::lit(2.3381) {
        return 0;
    }
    // omega_k ~ (3 pi (4k - 1)/8)^{2/3}, so k ~ (8 w^{3/2}/(3 pi) + 1)/4
    let wf = w.to_f64_lossy();
    let guess = ((8.0 * wf.powf(1.5) / (3.0 * std::f64::consts::PI) + 1.0) / 4.0).floor() as usize;
    let mut k = guess.clamp(1, K_HARD);
    let omega = |k: usize| airy_zero::<f64>(k).unwrap_or(f64::INFINITY);
    while k > 0 && omega(k) >= wf {
        k -= 1;
    }
    while k < K_HARD && omega(k + 1) < wf {
        k += 1;
    }
    k
}

/// Modes whose product `e_k(a, eta/h) e_k(x, eta/h)` can exceed `1e-14` of its peak
/// for `|eta|` in the cutoff support.
///
/// Low modes are dropped when they are evanescent at the source depth for every
/// admissible `eta` (`q^{1/3} a - omega_k > 13`). High modes are dropped only
/// through the frequency cutoff `chi(h sqrt(lambda))`, which vanishes once
/// `h^2 lambda_k >= chi_max^2` on the whole support; without it the range runs
/// to [`K_HARD`]. The result is widened by `k_margin`, clipped to `[1, K_HARD]`
/// and always contains `round(a^{3/2}/h)`. `x_max` does not narrow the range:
/// the oscillatory side of every mode reaches all `x <= x_max`.
pub fn mode_truncation<T: Real>(cfg: &SemiclassicalConfig<T>, _x_max: T) -> ModeRange {
    let h = cfg.h.to_f64_lossy();
    let a = cfg.a.to_f64_lossy();
    let (mu_lo, mu_hi) = cfg.metric.eigen_bounds();
    let (mu_lo, mu_hi) = (mu_lo.to_f64_lossy(), mu_hi.to_f64_lossy());
    let s_lo = cfg.cutoff.s_min.to_f64_lossy();
    let s_hi = cfg.cutoff.s_max.to_f64_lossy();

    let q_lo = mu_lo * s_lo * s_lo / (h * h);
    let evanescent_bound = q_lo.cbrt() * a - EVANESCENT_ARGUMENT;
    let mut k_min = zeros_below(T::lit(evanescent_bound)) + 1;

    let mut k_max = match &cfg.frequency_cutoff {
        Some(chi) => {
            let c_hi = chi.s_max.to_f64_lossy();
            let c_lo = chi.s_min.to_f64_lossy();
            let h23 = h.powf(2.0 / 3.0);
            let w_hi = (c_hi * c_hi - s_lo * s_lo) / (mu_lo.powf(2.0 / 3.0) * s_lo.powf(4.0 / 3.0) * h23);
            let w_lo = (c_lo * c_lo - s_hi * s_hi) / (mu_hi.powf(2.0 / 3.0) * s_hi.powf(4.0 / 3.0) * h23);
            k_min = k_min.max(zeros_below(T::lit(w_lo)) + 1);
            zeros_below(T::lit(w_hi)).max(1)
        }
        None => K_HARD,
    };

    k_min = k_min.saturating_sub(cfg.k_margin).max(1);
    k_max = (k_max + cfg.k_margin).min(K_HARD);
    let dominant = ((a.powf(1.5) / h).round() as usize).clamp(1, K_HARD);
    k_min = k_min.min(dominant);
    k_max = k_max.max(dominant).max(k_min);
    ModeRange { k_min, k_max }
}
