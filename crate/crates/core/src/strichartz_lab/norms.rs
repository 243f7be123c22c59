//! Discrete `L^q_t L^r_x` norms.

use crate::error::{domain, Result};
use crate::green_sum::FieldSlice;
use crate::quadrature::simpson_weights_irregular;
use crate::scalar::Real;

/// Adjacent time steps may differ by at most this factor, which keeps every
/// Simpson weight nonnegative.
pub const MAX_STEP_RATIO: f64 = 2.0;

/// Space-time data reduced to one spatial norm per time.
#[derive(Debug, Clone, Copy)]
pub enum SpaceTimeField<'a, T> {
    /// `(t_i, ||u(t_i)||_{L^r})`, e.g. a sup-norm envelope for `r = inf`.
    SpatialNorms { ts: &'a [T], values: &'a [T] },
    /// Field samples; the spatial norm is taken on each slice's grid.
    Slices(&'a [FieldSlice<T>]),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedNorm<T> {
    pub value: T,
    /// Same norm from every second sample, as a convergence check.
    pub coarse: T,
    pub relative_change: T,
}

/// `||u(t)||_{L^r}` of one slice: grid sup for `r = inf`; otherwise a trapezoid
/// rule over `x` and (in `d = 2`) the sorted tangential samples.
pub fn slice_norm<T: Real>(slice: &FieldSlice<T>, r: T) -> Result<T> {
    if slice.values.is_empty() {
        return domain("empty field slice");
    }
    if r.is_infinite() {
        return Ok(slice.sup_norm());
    }
    if !(r >= T::one()) {
        return domain(format!("spatial exponent r = {r} below 1"));
    }
    if slice.ys.iter().any(|y| y.len() != 1) || slice.ys.windows(2).any(|w| !(w[0][0] < w[1][0])) {
        return domain("finite r needs one increasing tangential coordinate");
    }
    let trap = |xs: &[T]| -> Vec<T> {
        let n = xs.len();
        (0..n)
            .map(|i| {
                let l = if i > 0 { xs[i] - xs[i - 1] } else { T::zero() };
                let rr = if i + 1 < n { xs[i + 1] - xs[i] } else { T::zero() };
                (l + rr) * T::lit(0.5)
            })
            .collect()
    };
    let ys: Vec<T> = slice.ys.iter().map(|y| y[0]).collect();
    let (wx, wy) = (trap(&slice.xs), trap(&ys));
    let mut acc = T::zero();
    for (ix, a) in wx.iter().enumerate() {
        for (iy, b) in wy.iter().enumerate() {
            acc += *a * *b * slice.value(ix, iy).norm().powf(r);
        }
    }
    Ok(acc.powf(r.recip()))
}

fn time_norm<T: Real>(ts: &[T], vals: &[T], q: T) -> Result<T> {
    if q.is_infinite() {
        return Ok(vals.iter().fold(T::zero(), |m, v| m.max(*v)));
    }
    if ts.len() < 3 {
        return domain(format!("time quadrature needs at least 3 samples, got {}", ts.len()));
    }
    let w = simpson_weights_irregular(ts);
    let s: T = w.iter().zip(vals).map(|(w, v)| *w * v.powf(q)).sum();
    Ok(s.max(T::zero()).powf(q.recip()))
}

/// `(int |u(t)|_{L^r}^q dt)^{1/q}` by composite Simpson in time; `q = inf` is the sup.
pub fn mixed_norm<T: Real>(field: SpaceTimeField<'_, T>, q: T, r: T) -> Result<MixedNorm<T>> {
    if !(q >= T::one()) {
        return domain(format!("time exponent q = {q} below 1"));
    }
    let (ts, vals): (Vec<T>, Vec<T>) = match field {
        SpaceTimeField::SpatialNorms { ts, values } => {
            if ts.len() != values.len() {
                return domain("time and value samples differ in length");
            }
            (ts.to_vec(), values.to_vec())
        }
        SpaceTimeField::Slices(slices) => {
            let vals = slices.iter().map(|s| slice_norm(s, r)).collect::<Result<Vec<T>>>()?;
            (slices.iter().map(|s| s.t).collect(), vals)
        }
    };
    if ts.is_empty() {
        return domain("empty space-time field");
    }
    if ts.windows(2).any(|w| !(w[0] < w[1])) {
        return domain("time samples must be strictly increasing");
    }
    if vals.iter().any(|v| !(*v >= T::zero() && v.is_finite())) {
        return domain("spatial norms must be finite and nonnegative");
    }
    let ratio = T::lit(MAX_STEP_RATIO);
    let steps: Vec<T> = ts.windows(2).map(|w| w[1] - w[0]).collect();
    if steps.windows(2).any(|s| s[1] > ratio * s[0] || s[0] > ratio * s[1]) {
        return domain(format!("adjacent time steps differ by more than a factor {MAX_STEP_RATIO}"));
    }
    let value = time_norm(&ts, &vals, q)?;
    let (ts2, v2): (Vec<T>, Vec<T>) = ts.iter().zip(&vals).step_by(2).map(|(t, v)| (*t, *v)).unzip();
    let coarse = if ts2.len() >= 3 || q.is_infinite() { time_norm(&ts2, &v2, q)? } else { value };
    let relative_change = if value > T::zero() { (value - coarse).abs() / value } else { T::zero() };
    Ok(MixedNorm {
        value,
        coarse,
        relative_change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn uniform(n: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn constant_field() {
        let ts = uniform(11, 0.0, 1.0);
        let v = vec![2.5; 11];
        let m = mixed_norm(SpaceTimeField::SpatialNorms { ts: &ts, values: &v }, 12.0 / 5.0, f64::INFINITY).unwrap();
        assert!((m.value - 2.5).abs() < 1e-13);
    }

    #[test]
    fn power_profile_matches_closed_form() {
        let delta = 0.1;
        let ts = uniform(2001, delta, 1.0);
        let v: Vec<f64> = ts.iter().map(|t| t.powf(-5.0 / 6.0)).collect();
        let q = 12.0 / 5.0;
        let m = mixed_norm(SpaceTimeField::SpatialNorms { ts: &ts, values: &v }, q, f64::INFINITY).unwrap();
        // int t^{-2} dt = 1/delta - 1
        let exact = (1.0 / delta - 1.0f64).powf(1.0 / q);
        assert!((m.value - exact).abs() < 1e-2 * exact);
        assert!(m.relative_change < 1e-4);
    }

    #[test]
    fn graded_grid() {
        let ts: Vec<f64> = (0..200).map(|i| 0.01 * 1.02f64.powi(i)).collect();
        let v: Vec<f64> = ts.iter().map(|t| t.powf(-0.25)).collect();
        let m = mixed_norm(SpaceTimeField::SpatialNorms { ts: &ts, values: &v }, 2.0, f64::INFINITY).unwrap();
        let (a, b) = (ts[0], *ts.last().unwrap());
        let exact = ((b.sqrt() - a.sqrt()) * 2.0).sqrt();
        assert!((m.value - exact).abs() < 1e-6 * exact);
    }

    #[test]
    fn q_infinity_is_the_time_sup() {
        let ts = uniform(5, 0.0, 1.0);
        let v = vec![1.0, 3.0, 2.0, 0.5, 1.0];
        let m = mixed_norm(SpaceTimeField::SpatialNorms { ts: &ts, values: &v }, f64::INFINITY, f64::INFINITY).unwrap();
        assert_eq!(m.value, 3.0);
    }

    #[test]
    fn rejects_bad_fields() {
        let e: [f64; 0] = [];
        assert!(mixed_norm(SpaceTimeField::SpatialNorms { ts: &e, values: &e }, 2.0, 2.0).is_err());
        let ts = [0.0, 0.1, 1.0];
        let v = [1.0, 1.0, 1.0];
        assert!(mixed_norm(SpaceTimeField::SpatialNorms { ts: &ts, values: &v }, 2.0, 2.0).is_err());
        assert!(mixed_norm(SpaceTimeField::Slices::<f64>(&[]), 2.0, 2.0).is_err());
    }

    proptest! {
        #[test]
        fn monotone_under_domination(base in proptest::collection::vec(0.0f64..5.0, 9..40), bump in 0.0f64..2.0, q in 1.0f64..6.0) {
            let n = base.len();
            let ts = uniform(n, 0.0, 1.0);
            let big: Vec<f64> = base.iter().enumerate().map(|(i, v)| v + bump * (i % 3) as f64).collect();
            let lo = mixed_norm(SpaceTimeField::SpatialNorms { ts: &ts, values: &base }, q, f64::INFINITY).unwrap().value;
            let hi = mixed_norm(SpaceTimeField::SpatialNorms { ts: &ts, values: &big }, q, f64::INFINITY).unwrap().value;
            prop_assert!(hi >= lo * (1.0 - 1e-12));
        }
    }
}
