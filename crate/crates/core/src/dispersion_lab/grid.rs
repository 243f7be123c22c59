//! Spatial and temporal sampling for envelope scans.

use crate::error::{domain, Result};
use crate::scalar::Real;

use super::schedule::caustic_period;

/// Normal-direction grid: fine near the source depth, coarse elsewhere on `(0, extent a]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGridSpec<T> {
    /// Fine step in units of `h`.
    pub fine_step: T,
    /// Half-width of the fine window in units of `h^{2/3}`.
    pub fine_half_width: T,
    /// Coarse step in units of `a`.
    pub coarse_step: T,
    /// Grid extent in units of `a`.
    pub extent: T,
}

impl<T: Real> SpatialGridSpec<T> {
    /// Step `h/8` within `|x - a| <= 4 h^{2/3}`, step `a/16` elsewhere on `(0, 2a]`.
    pub fn standard() -> Self {
        Self {
            fine_step: T::lit(0.125),
            fine_half_width: T::lit(4.0),
            coarse_step: T::lit(1.0 / 16.0),
            extent: T::lit(2.0),
        }
    }

    /// The standard grid with a different fine step (in units of `h`).
    pub fn with_fine_step(fine_step: T) -> Self {
        Self {
            fine_step,
            ..Self::standard()
        }
    }

    /// Sorted, strictly positive sample depths.
    pub fn points(&self, h: T, a: T) -> Result<Vec<T>> {
        let ok = |v: T| v > T::zero() && v.is_finite();
        if !(ok(self.fine_step) && ok(self.fine_half_width) && ok(self.coarse_step) && ok(self.extent)) {
            return domain("spatial grid parameters must be positive and finite");
        }
        if !(ok(h) && ok(a)) {
            return domain(format!("spatial grid needs h, a > 0 (got {h}, {a})"));
        }
        let step = self.fine_step * h;
        let half = self.fine_half_width * h.powf(T::lit(2.0 / 3.0));
        let m = (half / step).floor().to_usize().unwrap_or(0);
        let x_hi = self.extent * a;
        let mut xs: Vec<T> = (0..=2 * m)
            .map(|j| a + step * (T::from_usize_lossy(j) - T::from_usize_lossy(m)))
            .filter(|&x| x > T::zero() && x <= x_hi.max(a))
            .collect();
        let coarse = self.coarse_step * a;
        let n = (x_hi / coarse).round().to_usize().unwrap_or(0);
        xs.extend(
            (1..=n)
                .map(|i| coarse * T::from_usize_lossy(i))
                .filter(|&x| (x - a).abs() > half),
        );
        xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
        xs.dedup_by(|p, q| (*p - *q).abs() <= step * T::lit(1e-6));
        Ok(xs)
    }
}

/// Uniform times `i * dt` for `i = 1..`, with `dt = (4 sqrt(a(1+a)))/per_period`,
/// up to `t_max`. Every caustic time `t_n` is a grid point.
pub fn caustic_time_grid<T: Real>(a: T, t_max: T, per_period: usize) -> Result<Vec<T>> {
    if per_period == 0 || !(a > T::zero()) || !(t_max > T::zero()) {
        return domain("time grid needs a > 0, t_max > 0 and a positive sample count");
    }
    let dt = caustic_period(a) / T::from_usize_lossy(per_period);
    let n = (t_max / dt * (T::one() + T::epsilon() * T::lit(8.0))).floor().to_usize().unwrap_or(0);
    Ok((1..=n).map(|i| dt * T::from_usize_lossy(i)).collect())
}

/// `count` geometrically spaced times on `[t0, t1]`.
pub fn geometric_times<T: Real>(t0: T, t1: T, count: usize) -> Result<Vec<T>> {
    if count < 2 || !(t0 > T::zero() && t1 > t0) {
        return domain("geometric grid needs 0 < t0 < t1 and at least two points");
    }
    let r = (t1 / t0).ln() / T::from_usize_lossy(count - 1);
    Ok((0..count).map(|i| t0 * (r * T::from_usize_lossy(i)).exp()).collect())
}

/// Geometric times from `t0` with ratio at most `ratio` up to `t_switch`, then
/// uniform steps `dt` up to `t_end`. Resolves the `t ~ h` zone of space-time
/// norms without spending uniform samples on it.
pub fn graded_times<T: Real>(t0: T, t_switch: T, ratio: T, dt: T, t_end: T) -> Result<Vec<T>> {
    if !(ratio > T::one() && dt > T::zero() && t_end >= t_switch) {
        return domain("graded grid needs ratio > 1, dt > 0 and t_end >= t_switch");
    }
    let count = ((t_switch / t0).ln() / ratio.ln()).ceil().to_usize().unwrap_or(0) + 1;
    let mut ts = geometric_times(t0, t_switch, count.max(2))?;
    let steps = ((t_end - t_switch) / dt * (T::one() + T::epsilon() * T::lit(8.0))).floor().to_usize().unwrap_or(0);
    ts.extend((1..=steps).map(|i| t_switch + dt * T::from_usize_lossy(i)));
    Ok(ts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_grid_shape() {
        let h = 2f64.powi(-8);
        let a = 0.2;
        let xs = SpatialGridSpec::standard().points(h, a).unwrap();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert!(xs[0] > 0.0 && *xs.last().unwrap() <= 2.0 * a + 1e-12);
        assert!(xs.iter().any(|&x| (x - a).abs() < 1e-15));
        let half = 4.0 * h.powf(2.0 / 3.0);
        let fine: Vec<f64> = xs.iter().copied().filter(|x| (x - a).abs() <= half).collect();
        assert!(fine.windows(2).all(|w| w[1] - w[0] <= h / 8.0 + 1e-15));
        assert!(xs.windows(2).all(|w| w[1] - w[0] <= a / 16.0 + 1e-12));
    }

    #[test]
    fn fine_window_is_clipped_at_the_boundary() {
        let h = 2f64.powi(-6);
        let xs = SpatialGridSpec::standard().points(h, 0.1).unwrap();
        assert!(xs[0] > 0.0);
    }

    #[test]
    fn caustic_times_are_grid_points() {
        let a = 0.2f64;
        let ts = caustic_time_grid(a, 7.1, 20).unwrap();
        let p = caustic_period(a);
        for n in 1..=3 {
            assert!((ts[20 * n - 1] - n as f64 * p).abs() < 1e-12);
        }
        assert!(*ts.last().unwrap() <= 7.1);
    }

    #[test]
    fn geometric_endpoints() {
        let g = geometric_times(0.01f64, 0.2, 5).unwrap();
        assert!((g[0] - 0.01).abs() < 1e-15 && (g[4] - 0.2).abs() < 1e-14);
        assert!(geometric_times(0.2f64, 0.1, 5).is_err());
    }

    #[test]
    fn graded_grid_is_smooth() {
        let ts = graded_times(1e-4f64, 0.05, 1.2, 0.01, 1.0).unwrap();
        assert!((ts[0] - 1e-4).abs() < 1e-18 && (ts.last().unwrap() - 1.0).abs() < 1e-12);
        let steps: Vec<f64> = ts.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(steps.windows(2).all(|s| s[1] / s[0] <= 2.0 && s[0] / s[1] <= 2.0));
        assert!(graded_times(1e-4f64, 0.05, 1.0, 0.01, 1.0).is_err());
    }
}
