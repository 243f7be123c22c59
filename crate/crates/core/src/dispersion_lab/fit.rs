//! Log-log least squares for power laws.

use crate::error::{domain, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFit<T> {
    pub slope: T,
    /// Natural log of the prefactor.
    pub intercept: T,
    /// Root-mean-square residual in `ln(value)`.
    pub residual: T,
}

impl<T: Real> PowerFit<T> {
    pub fn predict(&self, scale: T) -> T {
        (self.intercept + self.slope * scale.ln()).exp()
    }
}

/// Fits `ln(value) = intercept + slope ln(scale)`.
pub fn exponent_fit<T: Real>(samples: &[(T, T)]) -> Result<PowerFit<T>> {
    if samples.len() < 3 {
        return domain(format!("power-law fit needs at least 3 samples, got {}", samples.len()));
    }
    if let Some((s, v)) = samples.iter().find(|(s, v)| !(*s > T::zero() && *v > T::zero())) {
        return domain(format!("power-law fit needs positive data, got ({s}, {v})"));
    }
    let n = T::from_usize_lossy(samples.len());
    let (mx, my) = samples
        .iter()
        .fold((T::zero(), T::zero()), |(x, y), (s, v)| (x + s.ln(), y + v.ln()));
    let (mx, my) = (mx / n, my / n);
    let (mut sxx, mut sxy) = (T::zero(), T::zero());
    for (s, v) in samples {
        let dx = s.ln() - mx;
        sxx += dx * dx;
        sxy += dx * (v.ln() - my);
    }
    if sxx == T::zero() {
        return domain("power-law fit needs at least two distinct scales");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: T = samples
        .iter()
        .map(|(s, v)| {
            let r = v.ln() - intercept - slope * s.ln();
            r * r
        })
        .sum();
    Ok(PowerFit {
        slope,
        intercept,
        residual: (ss / n).sqrt(),
    })
}
