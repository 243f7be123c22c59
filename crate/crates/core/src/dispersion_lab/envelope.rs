//! Measured sup-norm envelopes and their comparison with the dispersion bounds.

use crate::error::{domain, Result};
use crate::green_sum::{SemiclassicalConfig, SupScanner};
use crate::scalar::Real;

use super::fit::{exponent_fit, PowerFit};
use super::gamma::{envelope, gamma_bound, gamma_refined, GammaBound};
use super::grid::SpatialGridSpec;
use super::schedule::{caustic_times, CausticSchedule};

/// Samples on each side of the median window.
pub const PEAK_HALF_WINDOW: usize = 10;
/// A peak must exceed this multiple of the local median.
pub const PEAK_FACTOR: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak<T> {
    /// Index of the caustic interval containing the peak.
    pub n: Option<usize>,
    pub index: usize,
    pub t: T,
    pub sup: T,
    /// `sup / local median`
    pub prominence: T,
}

/// Strict local maxima exceeding `factor` times the median of the surrounding
/// `2 half_window + 1` samples (clipped at the ends).
pub fn detect_peaks<T: Real>(values: &[T], half_window: usize, factor: T) -> Vec<(usize, T)> {
    let n = values.len();
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        if !(values[i] > values[i - 1] && values[i] > values[i + 1]) {
            continue;
        }
        let lo = i.saturating_sub(half_window);
        let hi = (i + half_window + 1).min(n);
        let mut w = values[lo..hi].to_vec();
        w.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let m = w.len();
        let median = if m % 2 == 1 {
            w[m / 2]
        } else {
            (w[m / 2 - 1] + w[m / 2]) * T::lit(0.5)
        };
        if median > T::zero() && values[i] > factor * median {
            out.push((i, values[i] / median));
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct DispersionEnvelope<T> {
    pub h: T,
    pub a: T,
    pub dim: usize,
    pub ts: Vec<T>,
    pub xs: Vec<T>,
    /// `S(t_i) = sup_{x, y} |G|`
    pub sup: Vec<T>,
    pub x_at: Vec<T>,
    pub y_at: Vec<T>,
    /// `sup_y |G(t_i, x_j, .)|`
    pub per_x: Vec<Vec<T>>,
    pub bound: Vec<GammaBound<T>>,
    /// Refined envelope inside a caustic interval, the regime envelope elsewhere.
    pub refined: Vec<T>,
    pub interval: Vec<Option<usize>>,
    pub schedule: CausticSchedule<T>,
    pub peaks: Vec<Peak<T>>,
}

/// Scans `S(t)` on `ts` over the spatial grid and attaches bounds and peaks.
pub fn sup_norm_envelope<T: Real>(
    cfg: &SemiclassicalConfig<T>,
    ts: &[T],
    grid: &SpatialGridSpec<T>,
) -> Result<DispersionEnvelope<T>> {
    if ts.is_empty() || ts.windows(2).any(|w| !(w[0] < w[1])) || !(ts[0] > T::zero()) {
        return domain("time samples must be positive and strictly increasing");
    }
    let mut cfg = cfg.clone();
    cfg.t_max = ts[ts.len() - 1];
    let xs = grid.points(cfg.h, cfg.a)?;
    scanned_envelope(&SupScanner::new(cfg, xs)?, ts)
}

/// [`sup_norm_envelope`] on a prepared scanner, e.g. one restricted to a single mode.
pub fn scanned_envelope<T: Real>(scanner: &SupScanner<T>, ts: &[T]) -> Result<DispersionEnvelope<T>> {
    if ts.is_empty() || ts.windows(2).any(|w| !(w[0] < w[1])) || !(ts[0] > T::zero()) {
        return domain("time samples must be positive and strictly increasing");
    }
    let cfg = scanner.config();
    let xs = scanner.xs().to_vec();
    let samples = scanner.scan(ts)?;
    let schedule = caustic_times(cfg.a, ts[ts.len() - 1])?;
    let (h, a, dim) = (cfg.h, cfg.a, cfg.dim());
    let mut env = DispersionEnvelope {
        h,
        a,
        dim,
        ts: ts.to_vec(),
        xs,
        sup: samples.iter().map(|s| s.sup).collect(),
        x_at: samples.iter().map(|s| s.x_at).collect(),
        y_at: samples.iter().map(|s| s.y_at).collect(),
        per_x: samples.into_iter().map(|s| s.per_x).collect(),
        bound: Vec::with_capacity(ts.len()),
        refined: Vec::with_capacity(ts.len()),
        interval: Vec::with_capacity(ts.len()),
        schedule,
        peaks: Vec::new(),
    };
    for &t in ts {
        let b = gamma_bound(t, h, a, dim)?;
        let iv = env.schedule.containing(t).map(|i| i.n);
        let refined = match iv {
            Some(_) => envelope(t, h, dim, gamma_refined(t, h, a, &env.schedule)?),
            None => b.envelope,
        };
        env.bound.push(b);
        env.refined.push(refined);
        env.interval.push(iv);
    }
    env.peaks = detect_peaks(&env.sup, PEAK_HALF_WINDOW, T::lit(PEAK_FACTOR))
        .into_iter()
        .map(|(i, prominence)| Peak {
            n: env.interval[i],
            index: i,
            t: env.ts[i],
            sup: env.sup[i],
            prominence,
        })
        .collect();
    Ok(env)
}

impl<T: Real> DispersionEnvelope<T> {
    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }

    /// Index of the grid depth closest to `x`.
    pub fn nearest_x(&self, x: T) -> usize {
        let mut best = 0;
        for (j, &v) in self.xs.iter().enumerate() {
            if (v - x).abs() < (self.xs[best] - x).abs() {
                best = j;
            }
        }
        best
    }

    /// `sup_y |G(t_i, a, .)|`.
    pub fn at_source(&self) -> Vec<T> {
        let j = self.nearest_x(self.a);
        self.per_x.iter().map(|row| row[j]).collect()
    }

    /// Smallest `C` with `S <= C B` on every sample.
    pub fn upper_constant(&self) -> T {
        self.sup
            .iter()
            .zip(&self.bound)
            .fold(T::zero(), |c, (s, b)| c.max(*s / b.envelope))
    }

    /// `S(t, a) / B(t)` at the sample nearest `t`.
    pub fn source_ratio_at(&self, t: T) -> T {
        let mut i = 0;
        for (k, &v) in self.ts.iter().enumerate() {
            if (v - t).abs() < (self.ts[i] - t).abs() {
                i = k;
            }
        }
        let j = self.nearest_x(self.a);
        self.per_x[i][j] / self.bound[i].envelope
    }

    /// Highest detected peak inside `I_n`.
    pub fn peak_in(&self, n: usize) -> Option<&Peak<T>> {
        self.peaks
            .iter()
            .filter(|p| p.n == Some(n))
            .max_by(|p, q| p.sup.partial_cmp(&q.sup).unwrap())
    }

    /// Slope of `ln S` against `ln t` on `t_lo < t < t_hi`.
    pub fn decay_fit(&self, t_lo: T, t_hi: T) -> Result<PowerFit<T>> {
        let s: Vec<(T, T)> = self
            .ts
            .iter()
            .zip(&self.sup)
            .filter(|(t, _)| **t > t_lo && **t < t_hi)
            .map(|(t, s)| (*t, *s))
            .collect();
        exponent_fit(&s)
    }

    /// Least-squares `c` in `t_peak(n) = c n` over the detected peaks per interval.
    pub fn period_fit(&self) -> Option<T> {
        let (mut num, mut den) = (T::zero(), T::zero());
        for iv in &self.schedule.intervals {
            if let Some(p) = self.peak_in(iv.n) {
                let n = T::from_usize_lossy(iv.n);
                num += n * p.t;
                den += n * n;
            }
        }
        (den > T::zero()).then(|| num / den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peaks_need_prominence_and_strictness() {
        let mut v = vec![1.0f64; 41];
        v[20] = 2.0;
        v[30] = 1.4;
        let p = detect_peaks(&v, 10, 1.5);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].0, 20);
        // a plateau is not a strict maximum
        v[21] = 2.0;
        assert!(detect_peaks(&v, 10, 1.5).is_empty());
    }

    #[test]
    fn edges_and_short_series() {
        assert!(detect_peaks(&[1.0f64, 3.0], 10, 1.5).is_empty());
        let p = detect_peaks(&[1.0f64, 3.0, 1.0], 10, 1.5);
        assert_eq!(p, vec![(1, 3.0)]);
    }
}
