//! Admissible exponent pairs and the scaling exponent `beta`.

use crate::error::{domain, Result};
use crate::scalar::Real;

/// Loss of derivatives in the gallery-mode Strichartz estimate.
pub const GALLERY_LOSS: f64 = 1.0 / 6.0;
const TOL: f64 = 1e-12;

/// `(q, r)` with `q, r` in `[2, inf]` (`T::infinity()` allowed) in dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrichartzPair<T> {
    pub q: T,
    pub r: T,
    pub d: usize,
    /// 0 for the classical relation, positive for `1/q = ((d-1)/2 - loss)(1/2 - 1/r)`.
    pub loss: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Admissibility {
    pub admissible: bool,
    pub diagnostic: String,
}

impl<T: Real> StrichartzPair<T> {
    pub fn new(q: T, r: T, d: usize, loss: T) -> Result<Self> {
        let ok = |v: T| v >= T::lit(2.0);
        if !(ok(q) && ok(r)) {
            return domain(format!("exponents must lie in [2, inf], got q = {q}, r = {r}"));
        }
        if d < 2 || !(loss >= T::zero() && loss.is_finite()) {
            return domain(format!("need d >= 2 and a finite loss >= 0 (d = {d}, loss = {loss})"));
        }
        Ok(Self { q, r, d, loss })
    }
}

fn half_dim<T: Real>(d: usize) -> T {
    T::from_usize_lossy(d - 1) * T::lit(0.5)
}

/// Checks the classical relation `2/q + (d-1)/r <= (d-1)/2`, `q > 2` when
/// `loss = 0`, and the loss relation otherwise.
pub fn admissible_check<T: Real>(p: &StrichartzPair<T>) -> Admissibility {
    let tol = T::lit(TOL);
    if !(p.q > T::lit(2.0)) {
        return Admissibility {
            admissible: false,
            diagnostic: format!("q = {} must exceed 2", p.q),
        };
    }
    let (iq, ir) = (p.q.recip(), p.r.recip());
    if p.loss == T::zero() {
        let lhs = T::lit(2.0) * iq + T::from_usize_lossy(p.d - 1) * ir;
        let rhs = half_dim::<T>(p.d);
        let admissible = lhs <= rhs + tol;
        let kind = if (lhs - rhs).abs() <= tol { "sharp" } else if admissible { "strict" } else { "violated" };
        Admissibility {
            admissible,
            diagnostic: format!("2/q + (d-1)/r = {lhs} vs (d-1)/2 = {rhs} ({kind})"),
        }
    } else {
        let want = (half_dim::<T>(p.d) - p.loss) * (T::lit(0.5) - ir);
        let admissible = (iq - want).abs() <= tol;
        Admissibility {
            admissible,
            diagnostic: format!("1/q = {iq} vs ((d-1)/2 - loss)(1/2 - 1/r) = {want}"),
        }
    }
}

/// `q` from the loss relation and `beta = d(1/2 - 1/r) - 1/q`.
pub fn strichartz_exponents<T: Real>(d: usize, r: T, loss: T) -> Result<(T, T)> {
    if d < 2 || !(r >= T::lit(2.0)) || !(loss >= T::zero()) {
        return domain(format!("need d >= 2, r >= 2, loss >= 0 (d = {d}, r = {r}, loss = {loss})"));
    }
    let ir = r.recip();
    let iq = (half_dim::<T>(d) - loss) * (T::lit(0.5) - ir);
    if !(iq >= T::zero()) {
        return domain(format!("loss {loss} exceeds (d-1)/2"));
    }
    if iq >= T::lit(0.5) - T::lit(TOL) {
        return domain(format!("relation gives q = {} <= 2, the excluded endpoint", iq.recip()));
    }
    let q = iq.recip();
    let beta = T::from_usize_lossy(d) * (T::lit(0.5) - ir) - iq;
    Ok((q, beta))
}
