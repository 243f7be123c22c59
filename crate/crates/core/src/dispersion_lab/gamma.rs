//! Dispersion bounds `h^{-d} min{1, (h/t)^{(d-2)/2} gamma}`.
//!
//! Two regimes: a large source depth `a >= h^{0.55}` with
//! `gamma = (h/t)^{1/2} + a^{1/4}(h/t)^{1/4}`, and a small one `a <= h^{1/2}`
//! with `gamma = (h/t)^{1/3} + h^{1/4}`. Since `h^{0.55} < h^{1/2}` the two
//! overlap; both formulas are upper bounds there and the smaller is used.
//! Near a caustic return the refined bound tracks the distance to `t_n`.

use std::fmt;

use crate::error::{domain, Result};
use crate::scalar::Real;

use super::schedule::CausticSchedule;

/// Exponent of the large-source threshold, strictly inside that regime.
pub const LARGE_SOURCE_EXPONENT: f64 = 0.55;
/// Exponent of the small-source threshold.
pub const SMALL_SOURCE_EXPONENT: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    LargeSource,
    SmallSource,
    /// Both conditions hold; the bound is the smaller formula.
    Overlap,
    /// Neither condition holds; both formulas are reported, neither asserted.
    Gap,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Self::LargeSource => "large",
            Self::SmallSource => "small",
            Self::Overlap => "overlap",
            Self::Gap => "gap",
        }
    }

    pub fn classify<T: Real>(h: T, a: T) -> Self {
        let large = a >= h.powf(T::lit(LARGE_SOURCE_EXPONENT));
        let small = a <= h.powf(T::lit(SMALL_SOURCE_EXPONENT));
        match (large, small) {
            (true, true) => Self::Overlap,
            (true, false) => Self::LargeSource,
            (false, true) => Self::SmallSource,
            (false, false) => Self::Gap,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaBound<T> {
    pub regime: Regime,
    /// `gamma` of the applicable regime (the smaller one in the overlap, the larger in a gap).
    pub gamma: T,
    pub large: T,
    pub small: T,
    /// `h^{-d} min{1, (h/t)^{(d-2)/2} gamma}`
    pub envelope: T,
}

pub fn gamma_large<T: Real>(t: T, h: T, a: T) -> T {
    let r = h / t;
    r.sqrt() + a.powf(T::lit(0.25)) * r.powf(T::lit(0.25))
}

pub fn gamma_small<T: Real>(t: T, h: T) -> T {
    (h / t).cbrt() + h.powf(T::lit(0.25))
}

/// `h^{-d} min{1, (h/t)^{(d-2)/2} gamma}`.
pub fn envelope<T: Real>(t: T, h: T, d: usize, gamma: T) -> T {
    let decay = (h / t).powf(T::lit((d as f64 - 2.0) / 2.0));
    h.powi(-(d as i32)) * T::one().min(decay * gamma)
}

fn check<T: Real>(t: T, h: T, a: T) -> Result<()> {
    if !(t > T::zero() && h > T::zero() && a > T::zero()) {
        return domain(format!("gamma needs t, h, a > 0 (got t = {t}, h = {h}, a = {a})"));
    }
    Ok(())
}

pub fn gamma_bound<T: Real>(t: T, h: T, a: T, d: usize) -> Result<GammaBound<T>> {
    check(t, h, a)?;
    if d < 2 {
        return domain(format!("dimension {d} below 2"));
    }
    let regime = Regime::classify(h, a);
    let large = gamma_large(t, h, a);
    let small = gamma_small(t, h);
    let gamma = match regime {
        Regime::LargeSource => large,
        Regime::SmallSource => small,
        Regime::Overlap => large.min(small),
        Regime::Gap => large.max(small),
    };
    Ok(GammaBound {
        regime,
        gamma,
        large,
        small,
        envelope: envelope(t, h, d, gamma),
    })
}

/// Third term `a^{1/8} h^{1/4} / (n^{1/4} + h^{-1/12} a^{-1/24} |t^2 - t_n^2|^{1/6})`.
pub fn caustic_term<T: Real>(t: T, h: T, a: T, n: usize, t_n: T) -> T {
    let gap = (t * t - t_n * t_n).abs().powf(T::lit(1.0 / 6.0));
    let den = T::from_usize_lossy(n).powf(T::lit(0.25)) + h.powf(T::lit(-1.0 / 12.0)) * a.powf(T::lit(-1.0 / 24.0)) * gap;
    a.powf(T::lit(0.125)) * h.powf(T::lit(0.25)) / den
}

/// Refined `gamma` on the interval `I_n` containing `t`.
pub fn gamma_refined<T: Real>(t: T, h: T, a: T, schedule: &CausticSchedule<T>) -> Result<T> {
    check(t, h, a)?;
    let Some(iv) = schedule.containing(t) else {
        return domain(format!("t = {t} lies outside every caustic interval"));
    };
    Ok((h / t).sqrt() + h.cbrt() + caustic_term(t, h, a, iv.n, iv.t_n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion_lab::schedule::caustic_times;

    #[test]
    fn small_source_example() {
        let g = gamma_bound(0.5f64, 1e-2, 0.05, 2).unwrap();
        assert_eq!(g.regime, Regime::SmallSource);
        let want = 0.02f64.cbrt() + 0.01f64.powf(0.25);
        assert!((g.gamma - want).abs() < 1e-14);
        assert!((g.gamma - (0.2714 + 0.3162)).abs() < 1e-4);
    }

    #[test]
    fn large_source_example() {
        let h = 2f64.powi(-10);
        let t = 0.7;
        let g = gamma_bound(t, h, 0.3, 3).unwrap();
        assert_eq!(g.regime, Regime::LargeSource);
        let want = (h / t).sqrt() + 0.3f64.powf(0.25) * (h / t).powf(0.25);
        assert!((g.gamma - want).abs() < 1e-15);
        assert!((g.envelope - h.powi(-3) * (h / t).sqrt() * want).abs() < 1e-9 * g.envelope);
    }

    #[test]
    fn overlap_takes_the_smaller_formula() {
        let h = 2f64.powi(-8);
        // h^0.55 = 0.047, h^0.5 = 0.0625
        let g = gamma_bound(0.3, h, 0.055, 2).unwrap();
        assert_eq!(g.regime, Regime::Overlap);
        assert_eq!(g.gamma, g.large.min(g.small));
    }

    #[test]
    fn saturates_at_small_times() {
        let h = 2f64.powi(-8);
        for d in [2, 3] {
            let g = gamma_bound(1e-9, h, 0.2, d).unwrap();
            assert_eq!(g.envelope, h.powi(-(d as i32)));
        }
    }

    #[test]
    fn refined_bound_at_and_around_the_caustic() {
        let (h, a) = (2f64.powi(-8), 0.2);
        let s = caustic_times(a, 8.0).unwrap();
        for iv in &s.intervals {
            let third = caustic_term(iv.t_n, h, a, iv.n, iv.t_n);
            assert!((third - a.powf(0.125) * h.powf(0.25) / (iv.n as f64).powf(0.25)).abs() < 1e-15);
            // at the interval edges the caustic term is dominated by (h/t)^{1/3}
            for t in [iv.lo * (1.0 + 1e-9), iv.hi * (1.0 - 1e-9)] {
                assert!(caustic_term(t, h, a, iv.n, iv.t_n) <= (h / t).cbrt() * 1.05, "n {} t {t}", iv.n);
            }
            // the caustic term exceeds a^{1/4}(h/t)^{1/4} by at most (4 (1+a)^{3/2})^{1/4} on I_n
            let k = (4.0 * (1.0 + a).powf(1.5)).powf(0.25);
            for i in 1..200 {
                let t = iv.lo + (iv.hi - iv.lo) * i as f64 / 200.0;
                let refined = gamma_refined(t, h, a, &s).unwrap();
                let large_term = a.powf(0.25) * (h / t).powf(0.25);
                assert!(refined <= (h / t).sqrt() + h.cbrt() + k * large_term + 1e-15);
            }
        }
        assert!(gamma_refined(0.5, h, a, &s).is_err());
    }

    #[test]
    fn caustic_term_over_large_source_term_at_t_n() {
        // ratio (t_n / (n sqrt a))^{1/4} = (4 sqrt(1+a))^{1/4}, independent of h and n
        for (h, a) in [(2f64.powi(-8), 0.2), (2f64.powi(-12), 0.1), (1e-3, 0.5)] {
            let s = caustic_times(a, 10.0).unwrap();
            for iv in &s.intervals {
                let ratio = caustic_term(iv.t_n, h, a, iv.n, iv.t_n) / (a.powf(0.25) * (h / iv.t_n).powf(0.25));
                assert!((ratio - (4.0 * (1.0 + a).sqrt()).powf(0.25)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_nonpositive_inputs() {
        assert!(gamma_bound(0.0f64, 0.01, 0.1, 2).is_err());
        assert!(gamma_bound(0.1f64, -0.01, 0.1, 2).is_err());
        assert!(gamma_bound(0.1f64, 0.01, 0.1, 1).is_err());
    }
}
