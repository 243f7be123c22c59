use crate::error::{domain, Result};
use crate::scalar::Real;

/// Smooth cutoff profile on an open interval `(s_min, s_max)`, peak value 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffSpec<T> {
    pub s_min: T,
    pub s_max: T,
}

impl<T: Real> CutoffSpec<T> {
    pub fn new(s_min: T, s_max: T) -> Result<Self> {
        if !(s_min >= T::zero() && s_max > s_min && s_max.is_finite()) {
            return domain(format!("cutoff support ({s_min}, {s_max}) is not a valid interval"));
        }
        Ok(Self { s_min, s_max })
    }

    /// The standard `(1/2, 2)` bump.
    pub fn standard() -> Self {
        Self {
            s_min: T::lit(0.5),
            s_max: T::lit(2.0),
        }
    }

    pub fn center(&self) -> T {
        (self.s_min + self.s_max) * T::lit(0.5)
    }

    pub fn half_width(&self) -> T {
        (self.s_max - self.s_min) * T::lit(0.5)
    }

    /// `exp(1 - 1/(1 - u^2))`, `u = (s - center)/half_width`; zero for `|u| >= 1`.
    #[inline]
    pub fn eval(&self, s: T) -> T {
        let u = (s - self.center()) / self.half_width();
        let v = T::one() - u * u;
        if v <= T::zero() {
            T::zero()
        } else {
            (T::one() - v.recip()).exp()
        }
    }

    pub fn profile_name(&self) -> &'static str {
        "bump"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_bump_shape() {
        let c = CutoffSpec::<f64>::standard();
        assert_eq!(c.eval(1.25), 1.0);
        assert_eq!(c.eval(0.5), 0.0);
        assert_eq!(c.eval(2.0), 0.0);
        assert_eq!(c.eval(3.0), 0.0);
        assert!(c.eval(0.51) > 0.0 && c.eval(0.51) < 1e-10);
        assert!((c.eval(1.0) - c.eval(1.5)).abs() < 1e-15);
        assert!(CutoffSpec::new(2.0, 1.0).is_err());
    }
}
