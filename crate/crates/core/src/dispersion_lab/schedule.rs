//! Caustic return times `t_n = 4n sqrt(a(1+a))` and their windows `I_n`.

use crate::error::{domain, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausticInterval<T> {
    pub n: usize,
    pub t_n: T,
    /// `t_n (1 - a)`
    pub lo: T,
    /// `t_n (1 + a)`
    pub hi: T,
}

impl<T: Real> CausticInterval<T> {
    pub fn contains(&self, t: T) -> bool {
        t > self.lo && t < self.hi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CausticSchedule<T> {
    pub a: T,
    pub intervals: Vec<CausticInterval<T>>,
}

/// Period `4 sqrt(a(1+a))` of the caustic returns.
pub fn caustic_period<T: Real>(a: T) -> T {
    T::lit(4.0) * (a * (T::one() + a)).sqrt()
}

/// All `t_n <= t_max`.
pub fn caustic_times<T: Real>(a: T, t_max: T) -> Result<CausticSchedule<T>> {
    if !(a > T::zero() && a <= T::one()) {
        return domain(format!("source depth a = {a} outside (0, 1]"));
    }
    if !(t_max >= T::zero()) || !t_max.is_finite() {
        return domain(format!("time horizon {t_max} must be finite and nonnegative"));
    }
    let period = caustic_period(a);
    let intervals = (1..)
        .map(|n| (n, period * T::from_usize_lossy(n)))
        .take_while(|&(_, t)| t <= t_max)
        .map(|(n, t_n)| CausticInterval {
            n,
            t_n,
            lo: t_n * (T::one() - a),
            hi: t_n * (T::one() + a),
        })
        .collect();
    Ok(CausticSchedule { a, intervals })
}

impl<T: Real> CausticSchedule<T> {
    pub fn get(&self, n: usize) -> Option<&CausticInterval<T>> {
        self.intervals.get(n.checked_sub(1)?)
    }

    /// Interval containing `t`; where neighbours overlap, the one with the closest `t_n`.
    pub fn containing(&self, t: T) -> Option<&CausticInterval<T>> {
        self.intervals
            .iter()
            .filter(|i| i.contains(t))
            .min_by(|p, q| (p.t_n - t).abs().partial_cmp(&(q.t_n - t).abs()).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let s = caustic_times(0.25f64, 10.0).unwrap();
        let t1 = 4.0 * 0.3125f64.sqrt();
        assert!((s.intervals[0].t_n - 2.2360679774997896).abs() < 1e-14);
        assert!((s.intervals[1].t_n - 2.0 * t1).abs() < 1e-14);
        assert!((s.intervals[0].lo - 0.75 * t1).abs() < 1e-14);
        assert!((s.intervals[0].hi - 1.25 * t1).abs() < 1e-14);
        assert_eq!(s.intervals.len(), 4);
        assert!(s.intervals.windows(2).all(|w| w[0].t_n < w[1].t_n && w[0].lo < w[1].lo));
    }

    #[test]
    fn lookup() {
        let s = caustic_times(0.2f64, 6.0).unwrap();
        let t1 = s.get(1).unwrap().t_n;
        assert_eq!(s.containing(t1).unwrap().n, 1);
        assert_eq!(s.containing(2.0 * t1 * 0.99).unwrap().n, 2);
        assert!(s.containing(0.5).is_none());
        assert!(s.get(0).is_none());
    }

    #[test]
    fn invalid_inputs() {
        assert!(caustic_times(0.0f64, 1.0).is_err());
        assert!(caustic_times(1.5f64, 1.0).is_err());
        assert!(caustic_times(0.2f64, f64::NAN).is_err());
        assert!(caustic_times(0.2f64, 0.5).unwrap().intervals.is_empty());
    }
}
