//! Airy function `Ai` and its derivative on the real line and the complex plane.
//!
//! Small arguments use the Maclaurin series `Ai = c1 f - c2 g`; large arguments
//! use the Poincaré expansions in `zeta = 2/3 z^{3/2}`, the recessive form for
//! `|arg z| <= 2pi/3` and the oscillatory two-exponential form around the
//! negative axis. Errors stay below `1e-10 max(1, |Ai|)`: absolute where
//! `|Ai| <= 1`, relative where `Ai` grows off the positive axis.

use std::ops::{Add, Div, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest `|z|` accepted by the evaluators.
pub const MAX_ABS_ARGUMENT: f64 = 1.0e4;

/// Below this modulus the Maclaurin series is summed.
pub const SERIES_RADIUS: f64 = 6.5;

/// Series radius used in the sector `pi/2 <= |arg z| <= 5pi/6`.
pub const WIDE_SERIES_RADIUS: f64 = 9.0;

const AI_AT_ZERO: f64 = 0.355_028_053_887_817_24;
const MINUS_AIP_AT_ZERO: f64 = 0.258_819_403_792_806_8;
const ASYMPTOTIC_TERMS: usize = 40;
const SERIES_MAX_TERMS: usize = 200;

/// `(u_k, v_k)` of the Airy asymptotic expansions.
fn asymptotic_coefficients() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(ASYMPTOTIC_TERMS);
        let mut u = 1.0_f64;
        out.push((1.0, 1.0));
        for k in 1..ASYMPTOTIC_TERMS {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / ((2.0 * kf - 1.0) * 216.0 * kf);
            let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
            out.push((u, v));
        }
        out
    })
}

/// Arithmetic needed by the series, shared by real and complex arguments.
trait SeriesArg<T: Real>:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<T, Output = Self> + Mul<T, Output = Self>
{
    fn magnitude(self) -> T;
    fn one() -> Self;
}

impl<T: Real> SeriesArg<T> for T {
    fn magnitude(self) -> T {
        self.abs()
    }
    fn one() -> Self {
        T::one()
    }
}

impl<T: Real> SeriesArg<T> for Complex<T> {
    fn magnitude(self) -> T {
        self.norm()
    }
    fn one() -> Self {
        Complex::new(T::one(), T::zero())
    }
}

/// Maclaurin evaluation of `(Ai(z), Ai'(z))`.
fn maclaurin<T: Real, A: SeriesArg<T>>(z: A) -> (A, A) {
    let eps = T::epsilon() * T::lit(0.5);
    let z2 = z * z;
    let z3 = z2 * z;
    let mut f = A::one();
    let mut g = z;
    let mut fp = z2 / T::lit(2.0);
    let mut gp = A::one();
    let (mut tf, mut tg, mut tfp, mut tgp) = (A::one(), z, fp, A::one());
    for k in 0..SERIES_MAX_TERMS {
        let kf = T::from_usize_lossy(k);
        let three_k = T::lit(3.0) * kf;
        tf = tf * z3 / ((three_k + T::lit(2.0)) * (three_k + T::lit(3.0)));
        tg = tg * z3 / ((three_k + T::lit(3.0)) * (three_k + T::lit(4.0)));
        tgp = tgp * z3 / ((three_k + T::lit(1.0)) * (three_k + T::lit(3.0)));
        f = f + tf;
        g = g + tg;
        gp = gp + tgp;
        // f' starts at k = 1, its ratio uses 3k with k >= 1
        let kk = kf + T::one();
        tfp = tfp * z3 / ((T::lit(3.0) * kk) * (T::lit(3.0) * kk + T::lit(2.0)));
        fp = fp + tfp;
        let scale = f.magnitude() + g.magnitude() + fp.magnitude() + gp.magnitude();
        let last = tf.magnitude() + tg.magnitude() + tfp.magnitude() + tgp.magnitude();
        if last <= eps * scale {
            break;
        }
    }
    let c1 = T::lit(AI_AT_ZERO);
    let c2 = T::lit(MINUS_AIP_AT_ZERO);
    (f * c1 - g * c2, fp * c1 - gp * c2)
}

/// Sums `sum_k (-1)^k c_k / zeta^k` over `k = start, start+step, ...`
/// with optimal truncation; `pick` selects `u` or `v`.
fn asymptotic_sum<T: Real>(
    inv_zeta: Complex<T>,
    start: usize,
    step: usize,
    pick: impl Fn(&(f64, f64)) -> f64,
) -> Complex<T> {
    let coeffs = asymptotic_coefficients();
    let eps = T::epsilon() * T::lit(0.25);
    let mut sum = Complex::new(T::zero(), T::zero());
    let mut power = if start == 0 { Complex::new(T::one(), T::zero()) } else { inv_zeta.powu(start as u32) };
    let stride = inv_zeta.powu(step as u32);
    let mut previous = T::infinity();
    let mut k = start;
    while k < coeffs.len() {
        let sign = if (k / step) % 2 == 0 { T::one() } else { -T::one() };
        let term = power * (sign * T::lit(pick(&coeffs[k])));
        let mag = term.norm();
        if mag > previous {
            break;
        }
        sum += term;
        if mag <= eps * sum.norm() {
            break;
        }
        previous = mag;
        power = power * stride;
        k += step;
    }
    sum
}

fn asymptotic_complex<T: Real>(z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let two_thirds = T::lit(2.0 / 3.0);
    let sqrt_pi = T::PI().sqrt();
    let quarter = T::FRAC_PI_4();
    if z.arg().abs() <= T::lit(2.0) * T::FRAC_PI_3() {
        let root = z.sqrt();
        let zeta = z * root * two_thirds;
        let inv = zeta.inv();
        let z14 = root.sqrt();
        let e = (-zeta).exp();
        let su = asymptotic_sum(inv, 0, 1, |c| c.0);
        let sv = asymptotic_sum(inv, 0, 1, |c| c.1);
        let ai = e * su / (z14 * (T::lit(2.0) * sqrt_pi));
        let aip = -(z14 * e * sv) / (T::lit(2.0) * sqrt_pi);
        (ai, aip)
    } else {
        let w = -z;
        let root = w.sqrt();
        let zeta = w * root * two_thirds;
        let inv = zeta.inv();
        let w14 = root.sqrt();
        let phase = zeta - Complex::new(quarter, T::zero());
        let (c, s) = (phase.cos(), phase.sin());
        let pu = asymptotic_sum(inv, 0, 2, |c| c.0);
        let qu = asymptotic_sum(inv, 1, 2, |c| c.0);
        let pv = asymptotic_sum(inv, 0, 2, |c| c.1);
        let qv = asymptotic_sum(inv, 1, 2, |c| c.1);
        let ai = (c * pu + s * qu) / (w14 * sqrt_pi);
        let aip = w14 * (s * pv - c * qv) / sqrt_pi;
        (ai, aip)
    }
}

fn asymptotic_real_sum<T: Real>(inv_zeta: T, start: usize, step: usize, use_v: bool) -> T {
    let coeffs = asymptotic_coefficients();
    let eps = T::epsilon() * T::lit(0.25);
    let mut sum = T::zero();
    let mut power = inv_zeta.powi(start as i32);
    let stride = inv_zeta.powi(step as i32);
    let mut previous = T::infinity();
    let mut k = start;
    while k < coeffs.len() {
        let c = if use_v { coeffs[k].1 } else { coeffs[k].0 };
        let sign = if (k / step) % 2 == 0 { T::one() } else { -T::one() };
        let term = power * sign * T::lit(c);
        let mag = term.abs();
        if mag > previous {
            break;
        }
        sum += term;
        if mag <= eps * sum.abs() {
            break;
        }
        previous = mag;
        power = power * stride;
        k += step;
    }
    sum
}

fn asymptotic_real<T: Real>(x: T) -> (T, T) {
    let two_thirds = T::lit(2.0 / 3.0);
    let sqrt_pi = T::PI().sqrt();
    if x > T::zero() {
        let root = x.sqrt();
        let zeta = two_thirds * x * root;
        let x14 = root.sqrt();
        let e = (-zeta).exp();
        if e == T::zero() {
            return (T::zero(), T::zero());
        }
        let inv = zeta.recip();
        let su = asymptotic_real_sum(inv, 0, 1, false);
        let sv = asymptotic_real_sum(inv, 0, 1, true);
        let two_sqrt_pi = T::lit(2.0) * sqrt_pi;
        (e * su / (x14 * two_sqrt_pi), -(x14 * e * sv) / two_sqrt_pi)
    } else {
        let w = -x;
        let root = w.sqrt();
        let zeta = two_thirds * w * root;
        let w14 = root.sqrt();
        let inv = zeta.recip();
        let phase = zeta - T::FRAC_PI_4();
        let (s, c) = phase.sin_cos();
        let pu = asymptotic_real_sum(inv, 0, 2, false);
        let qu = asymptotic_real_sum(inv, 1, 2, false);
        let pv = asymptotic_real_sum(inv, 0, 2, true);
        let qv = asymptotic_real_sum(inv, 1, 2, true);
        ((c * pu + s * qu) / (w14 * sqrt_pi), w14 * (s * pv - c * qv) / sqrt_pi)
    }
}

fn check_range<T: Real>(modulus: T) -> Result<()> {
    let m = modulus.to_f64_lossy();
    if !(m <= MAX_ABS_ARGUMENT) {
        return Err(Error::Range {
            value: m,
            range: "|z| <= 1e4",
        });
    }
    Ok(())
}

/// `(Ai(z), Ai'(z))` for complex `z`, `|z| <= 1e4`.
pub fn airy_pair<T: Real>(z: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
    let r = z.norm();
    check_range(r)?;
    if use_series(r, z.arg().abs()) {
        Ok(maclaurin(z))
    } else {
        Ok(asymptotic_complex(z))
    }
}

/// Near the Stokes directions `|arg z| = 2pi/3` the Poincaré sums lose accuracy
/// like `e^{-4|z|^{3/2}/3}`, while the series stays well conditioned because
/// `|Ai|` itself grows there; so the series is kept out to [`WIDE_SERIES_RADIUS`].
fn use_series<T: Real>(r: T, abs_arg: T) -> bool {
    if r <= T::lit(SERIES_RADIUS) {
        return true;
    }
    let wide = abs_arg >= T::FRAC_PI_2() && abs_arg <= T::lit(5.0) * T::PI() / T::lit(6.0);
    wide && r <= T::lit(WIDE_SERIES_RADIUS)
}

/// Airy function `Ai(z)`.
pub fn airy_ai<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    airy_pair(z).map(|p| p.0)
}

/// Derivative `Ai'(z)`.
pub fn airy_ai_prime<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    airy_pair(z).map(|p| p.1)
}

/// `(Ai(x), Ai'(x))` for real `x`; avoids complex arithmetic in the mode tables.
pub fn airy_pair_real<T: Real>(x: T) -> Result<(T, T)> {
    check_range(x.abs())?;
    if x.abs() <= T::lit(SERIES_RADIUS) {
        Ok(maclaurin(x))
    } else {
        Ok(asymptotic_real(x))
    }
}

/// `Ai(x)` for real `x`.
pub fn airy_ai_real<T: Real>(x: T) -> Result<T> {
    airy_pair_real(x).map(|p| p.0)
}

/// `Ai(x)` without the range check, for hot loops whose arguments are bounded by construction.
#[inline]
pub(crate) fn ai_real_unchecked<T: Real>(x: T) -> T {
    if x > T::lit(110.0) {
        T::zero()
    } else if x.abs() <= T::lit(SERIES_RADIUS) {
        maclaurin(x).0
    } else {
        asymptotic_real(x).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn values_at_origin() {
        let (ai, aip) = airy_pair(c(0.0, 0.0)).unwrap();
        assert!((ai.re - 0.3550280538878172).abs() < 1e-15);
        assert!((aip.re - (-0.2588194037928068)).abs() < 1e-15);
        assert_eq!(ai.im, 0.0);
    }

    #[test]
    fn value_at_five() {
        let ai = airy_ai_real(5.0f64).unwrap();
        assert!((ai - 1.0834e-4).abs() < 1e-8);
        assert!((ai - 1.0834442813607433e-4).abs() < 1e-12);
    }

    #[test]
    fn derivative_at_first_zero_is_large() {
        let (ai, aip) = airy_pair_real(-2.338107410459767f64).unwrap();
        assert!(ai.abs() < 1e-10);
        assert!(aip.abs() > 0.5);
    }

    /// Series and asymptotic branches must agree across the switchover circle.
    #[test]
    fn seam_overlap() {
        for j in 0..48 {
            let th = std::f64::consts::TAU * j as f64 / 48.0;
            for r in [SERIES_RADIUS - 0.01, SERIES_RADIUS, SERIES_RADIUS + 0.01] {
                let z = Complex::from_polar(r, th);
                let (s, sp) = maclaurin(z);
                let (a, ap) = airy_pair(z).unwrap();
                let scale = s.norm().max(1.0);
                assert!((s - a).norm() < 1e-10 * scale, "r {r} theta {th}: {}", (s - a).norm() / scale);
                assert!((sp - ap).norm() < 1e-9 * sp.norm().max(1.0), "r {r} theta {th}: {}", (sp - ap).norm());
            }
        }
    }

    #[test]
    fn real_and_complex_paths_agree() {
        for x in [-40.0f64, -12.5, -6.4, -1.0, 2.0, 6.6, 30.0] {
            let (r, rp) = airy_pair_real(x).unwrap();
            let (z, zp) = airy_pair(c(x, 0.0)).unwrap();
            assert!((r - z.re).abs() < 1e-10 * r.abs().max(1.0), "x {x}");
            assert!((rp - zp.re).abs() < 1e-9 * rp.abs().max(1.0), "x {x}");
        }
    }

    #[test]
    fn decays_monotonically_for_positive_argument() {
        let mut prev = airy_ai_real(0.0f64).unwrap();
        for i in 1..=400 {
            let v = airy_ai_real(i as f64 * 0.25).unwrap();
            assert!(v > 0.0 && v < prev);
            prev = v;
        }
    }

    #[test]
    fn range_error_beyond_working_radius() {
        assert!(matches!(airy_ai(c(2.0e4, 0.0)), Err(crate::Error::Range { .. })));
        assert!(airy_ai_real(-1.5e4f64).is_err());
    }

    #[test]
    fn single_precision_tracks_double() {
        for x in [-7.0f32, -1.5, 0.0, 3.0] {
            let s = airy_ai_real(x).unwrap() as f64;
            let d = airy_ai_real(x as f64).unwrap();
            assert!((s - d).abs() < 1e-5, "x {x}");
        }
    }

    proptest! {
        /// The Airy equation `Ai'' = z Ai`, checked by differencing `Ai'`.
        #[test]
        fn prop_airy_equation(re in -30.0f64..30.0, im in -30.0f64..30.0) {
            let z = c(re, im);
            prop_assume!(z.norm() < 40.0 && (z.norm() - SERIES_RADIUS).abs() > 0.05);
            let h = 1e-4;
            let (ai, _) = airy_pair(z).unwrap();
            let (_, p1) = airy_pair(z + h).unwrap();
            let (_, p0) = airy_pair(z - h).unwrap();
            let second = (p1 - p0) / (2.0 * h);
            let scale = (z * ai).norm().max(1.0);
            prop_assert!((second - z * ai).norm() < 1e-5 * scale);
        }
    }
}
