//! Splitting the measured kernel into a regular part and the singular caustic part.
//!
//! The singular region is the union over `n` of `|x - a| <= a/n^2`,
//! `|t - t_n| <= a^{3/2} n`. The time window is read as `a^{3/2} n`, matching the
//! width `t_n a ~ 4 n a^{3/2}` of `I_n`.

use crate::dispersion_lab::{exponent_fit, CausticSchedule, DispersionEnvelope, PowerFit};
use crate::error::{domain, Result};
use crate::quadrature::simpson_weights_irregular;
use crate::scalar::Real;

/// How the singular time window is read; echoed in report headers.
pub const WINDOW_RULE: &str = "|t - t_n| <= a^{3/2} * n";

#[derive(Debug, Clone)]
pub struct KernelSplit<T> {
    pub h: T,
    pub a: T,
    pub ts: Vec<T>,
    pub xs: Vec<T>,
    /// `mask[i][j]`: sample `(t_i, x_j)` is in a singular ball.
    pub mask: Vec<Vec<bool>>,
    /// `G_0`: the envelope off the mask, zero on it.
    pub regular: Vec<Vec<T>>,
    /// `G_s`: the envelope on the mask, zero off it.
    pub singular: Vec<Vec<T>>,
}

/// Index of the singular ball containing `(t, x)`, if any.
pub fn singular_ball<T: Real>(schedule: &CausticSchedule<T>, t: T, x: T) -> Option<usize> {
    let a = schedule.a;
    schedule.intervals.iter().find_map(|iv| {
        let n = T::from_usize_lossy(iv.n);
        let in_x = (x - a).abs() <= a / (n * n);
        let in_t = (t - iv.t_n).abs() <= a.powf(T::lit(1.5)) * n;
        (in_x && in_t).then_some(iv.n)
    })
}

pub fn kernel_split<T: Real>(env: &DispersionEnvelope<T>, schedule: &CausticSchedule<T>, h: T) -> KernelSplit<T> {
    let mut mask = Vec::with_capacity(env.len());
    let mut regular = Vec::with_capacity(env.len());
    let mut singular = Vec::with_capacity(env.len());
    for (i, &t) in env.ts.iter().enumerate() {
        let row: Vec<bool> = env.xs.iter().map(|&x| singular_ball(schedule, t, x).is_some()).collect();
        let vals = &env.per_x[i];
        regular.push(vals.iter().zip(&row).map(|(v, m)| if *m { T::zero() } else { *v }).collect());
        singular.push(vals.iter().zip(&row).map(|(v, m)| if *m { *v } else { T::zero() }).collect());
        mask.push(row);
    }
    KernelSplit {
        h,
        a: schedule.a,
        ts: env.ts.clone(),
        xs: env.xs.clone(),
        mask,
        regular,
        singular,
    }
}

impl<T: Real> KernelSplit<T> {
    pub fn regular_sup(&self) -> Vec<T> {
        self.regular.iter().map(|r| r.iter().fold(T::zero(), |m, v| m.max(*v))).collect()
    }

    pub fn singular_sup(&self) -> Vec<T> {
        self.singular.iter().map(|r| r.iter().fold(T::zero(), |m, v| m.max(*v))).collect()
    }

    /// Fraction of samples inside the mask.
    pub fn mask_fraction(&self) -> T {
        let total: usize = self.mask.iter().map(|r| r.len()).sum();
        let inside: usize = self.mask.iter().map(|r| r.iter().filter(|m| **m).count()).sum();
        T::from_usize_lossy(inside) / T::from_usize_lossy(total.max(1))
    }

    /// Largest `|G_0 + G_s - envelope|` over the samples.
    pub fn reconstruction_error(&self, env: &DispersionEnvelope<T>) -> T {
        let mut worst = T::zero();
        for i in 0..self.ts.len() {
            for j in 0..self.xs.len() {
                worst = worst.max((self.regular[i][j] + self.singular[i][j] - env.per_x[i][j]).abs());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitReport<T> {
    /// Fit of `h^{2 beta} sup_x G_0` against `t` on `[t_min, t_max]`.
    pub regular_fit: PowerFit<T>,
    /// `int |h^{2 beta} sup_x G_s|^p dt` over the sampled times.
    pub singular_statistic: T,
    pub mask_fraction: T,
}

/// Kernel bounds of the split: the decay exponent of the regular part and the
/// `L^p_t` mass of the singular part, both scaled by `h^{2 beta}`.
pub fn split_bounds_check<T: Real>(split: &KernelSplit<T>, two_beta: T, t_min: T, t_max: T, p: T) -> Result<SplitReport<T>> {
    let scale = split.h.powf(two_beta);
    let g0 = split.regular_sup();
    let pts: Vec<(T, T)> = split
        .ts
        .iter()
        .zip(&g0)
        .filter(|(t, v)| **t >= t_min && **t <= t_max && **v > T::zero())
        .map(|(t, v)| (*t, *v * scale))
        .collect();
    if pts.len() < 3 {
        return domain(format!("only {} regular samples in [{t_min}, {t_max}]", pts.len()));
    }
    let regular_fit = exponent_fit(&pts)?;
    if split.ts.len() < 3 {
        return domain("singular statistic needs at least 3 time samples");
    }
    let w = simpson_weights_irregular(&split.ts);
    let singular_statistic = split
        .singular_sup()
        .iter()
        .zip(&w)
        .map(|(v, w)| *w * (*v * scale).powf(p))
        .sum::<T>()
        .max(T::zero());
    Ok(SplitReport {
        regular_fit,
        singular_statistic,
        mask_fraction: split.mask_fraction(),
    })
}

/// `||K * f||_{L^{12/5}} / ||f||_{L^{12/7}}` for `K = |t|^{-5/6}` and a Gaussian
/// pulse of the given width, on a grid of `n` cells over `[-1, 1]`. The kernel is
/// averaged exactly over each cell, so the singularity is integrated, not sampled.
pub fn convolution_ratio<T: Real>(width: T, n: usize) -> Result<T> {
    if n < 16 || !(width > T::zero()) {
        return domain("convolution check needs at least 16 cells and a positive width");
    }
    let dt = T::lit(2.0) / T::from_usize_lossy(n);
    let t = |i: usize| -T::one() + dt * (T::from_usize_lossy(i) + T::lit(0.5));
    let f: Vec<T> = (0..n).map(|i| (-(t(i) / width).powi(2)).exp()).collect();
    // cell average of |s|^{-5/6} over [m dt - dt/2, m dt + dt/2]
    let prim = |s: T| s.signum() * T::lit(6.0) * s.abs().powf(T::lit(1.0 / 6.0));
    let kernel = |m: isize| -> T {
        let c = dt * T::from_isize(m).unwrap();
        (prim(c + dt * T::lit(0.5)) - prim(c - dt * T::lit(0.5))) / dt
    };
    let ks: Vec<T> = (0..2 * n).map(|m| kernel(m as isize - n as isize)).collect();
    let conv: Vec<T> = (0..n)
        .map(|i| (0..n).map(|j| ks[i + n - j] * f[j]).sum::<T>() * dt)
        .collect();
    let norm = |v: &[T], p: T| (v.iter().map(|x| x.abs().powf(p)).sum::<T>() * dt).powf(p.recip());
    Ok(norm(&conv, T::lit(12.0 / 5.0)) / norm(&f, T::lit(12.0 / 7.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion_lab::caustic_times;

    #[test]
    fn balls_and_windows() {
        let a = 0.2f64;
        let s = caustic_times(a, 7.0).unwrap();
        let t1 = s.intervals[0].t_n;
        assert_eq!(singular_ball(&s, t1, a), Some(1));
        assert_eq!(singular_ball(&s, 1.0, a), None);
        assert_eq!(singular_ball(&s, t1, a + 0.21), None);
        // n = 2 ball is narrower in x
        let t2 = s.intervals[1].t_n;
        assert_eq!(singular_ball(&s, t2, a + 0.04), Some(2));
        assert_eq!(singular_ball(&s, t2, a + 0.06), None);
    }

    #[test]
    fn windows_are_disjoint_for_small_sources() {
        let a = 0.2f64;
        let s = caustic_times(a, 30.0).unwrap();
        // spacing 4 sqrt(a(1+a)) against the summed half-widths a^{3/2}(2n+1)
        for w in s.intervals.windows(2) {
            let reach = a.powf(1.5) * (w[0].n as f64 + w[1].n as f64);
            assert_eq!(w[1].t_n - w[0].t_n > reach, w[0].n <= 10, "n = {}", w[0].n);
        }
    }

    #[test]
    fn rescaled_pulses_share_a_bound() {
        // the map is dilation invariant: f(t/w) scales both norms by the same power
        let r: Vec<f64> = [0.02, 0.04, 0.08].iter().map(|&w| convolution_ratio(w, 2048).unwrap()).collect();
        for v in &r {
            assert!(v.is_finite() && *v > 0.0);
            assert!((v / r[0] - 1.0).abs() < 0.05, "{r:?}");
        }
    }
}
