//! Zeros `-omega_k` of `Ai`, stored as the positive increasing sequence `omega_k`.

use crate::error::{domain, Result};
use crate::scalar::Real;

use super::airy::airy_pair_real;

/// Largest index served by [`airy_zero`].
pub const MAX_ZERO_INDEX: usize = 10_000;

const NEWTON_MAX_STEPS: usize = 8;

/// Asymptotic starting point `T(3pi(4k-1)/8)` with three correction terms.
pub fn zero_initial_guess<T: Real>(k: usize) -> T {
    let t = T::lit(3.0) * T::PI() * (T::lit(4.0) * T::from_usize_lossy(k) - T::one()) / T::lit(8.0);
    let t2 = (t * t).recip();
    let series = T::one() + t2 * (T::lit(5.0 / 48.0) + t2 * (T::lit(-5.0 / 36.0) + t2 * T::lit(77125.0 / 82944.0)));
    t.powf(T::lit(2.0 / 3.0)) * series
}

/// `omega_k` together with an a-posteriori error estimate `|Ai(-omega)/Ai'(-omega)|`.
pub fn airy_zero_with_error<T: Real>(k: usize) -> Result<(T, T)> {
    if k == 0 || k > MAX_ZERO_INDEX {
        return domain(format!("Airy zero index {k} outside 1..={MAX_ZERO_INDEX}"));
    }
    let guess = zero_initial_guess::<T>(k);
    // Consecutive zeros are at least ~pi/sqrt(omega) apart; bracket well inside that.
    let half_gap = T::lit(0.4) * T::PI() / guess.sqrt().max(T::one());
    let (mut lo, mut hi) = (guess - half_gap, guess + half_gap);
    let f = |w: T| -> Result<(T, T)> { airy_pair_real(-w) };
    let (flo, _) = f(lo)?;
    let (fhi, _) = f(hi)?;
    let bracketed = flo * fhi <= T::zero();

    let mut w = guess;
    for _ in 0..NEWTON_MAX_STEPS {
        let (ai, aip) = f(w)?;
        if ai == T::zero() {
            break;
        }
        if bracketed {
            // keep the sign-change bracket current
            if ai * flo > T::zero() {
                lo = w;
            } else {
                hi = w;
            }
        }
        // d/dw Ai(-w) = -Ai'(-w)
        let step = ai / aip;
        let mut next = w + step;
        if bracketed && !(next >= lo && next <= hi) {
            next = (lo + hi) * T::lit(0.5);
        }
        let moved = (next - w).abs();
        w = next;
        if moved <= T::epsilon() * T::lit(4.0) * w {
            break;
        }
    }
    let (ai, aip) = f(w)?;
    let estimate = (ai / aip).abs() + T::epsilon() * w;
    Ok((w, estimate))
}

/// `omega_k`, the `k`-th zero of `Ai(-x)`, for `1 <= k <= 10^4`.
pub fn airy_zero<T: Real>(k: usize) -> Result<T> {
    airy_zero_with_error(k).map(|p| p.0)
}

/// Immutable table of `omega_1 < omega_2 < ... < omega_K`.
#[derive(Debug, Clone)]
pub struct AiryZeroTable<T> {
    zeros: Vec<T>,
    accuracy: Vec<T>,
}

impl<T: Real> AiryZeroTable<T> {
    pub fn new(count: usize) -> Result<Self> {
        if count == 0 || count > MAX_ZERO_INDEX {
            return domain(format!("zero table size {count} outside 1..={MAX_ZERO_INDEX}"));
        }
        let mut zeros = Vec::with_capacity(count);
        let mut accuracy = Vec::with_capacity(count);
        for k in 1..=count {
            let (w, err) = airy_zero_with_error::<T>(k)?;
            zeros.push(w);
            accuracy.push(err);
        }
        Ok(Self { zeros, accuracy })
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// `omega_k` for 1-based `k`.
    pub fn omega(&self, k: usize) -> T {
        self.zeros[k - 1]
    }

    pub fn zeros(&self) -> &[T] {
        &self.zeros
    }

    pub fn accuracy(&self) -> &[T] {
        &self.accuracy
    }

    /// Number of tabulated zeros strictly below `w`.
    pub fn count_below(&self, w: T) -> usize {
        self.zeros.partition_point(|&z| z < w)
    }
}
