//! Bessel `J0` for real arguments and the Hankel-expansion coefficients of order zero.

use crate::scalar::Real;

const SERIES_LIMIT: f64 = 12.0;

/// `a_k` in `H_0^{(1)}(z) ~ sqrt(2/(pi z)) e^{i(z - pi/4)} sum_k i^k a_k z^{-k}`.
pub fn hankel_coefficients(n: usize) -> Vec<f64> {
    let mut a = Vec::with_capacity(n);
    let mut c = 1.0f64;
    for k in 0..n {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            c *= -odd * odd / (8.0 * k as f64);
        }
        a.push(c);
    }
    a
}

/// `J0(z)` for real `z`, absolute error around `1e-11`.
pub fn bessel_j0<T: Real>(z: T) -> T {
    let z = z.abs();
    if z <= T::lit(SERIES_LIMIT) {
        let x = -(z * z) * T::lit(0.25);
        let mut term = T::one();
        let mut sum = T::one();
        for k in 1..80 {
            let kf = T::from_usize_lossy(k);
            term *= x / (kf * kf);
            sum += term;
            if term.abs() < T::epsilon() * T::lit(1e-3) {
                break;
            }
        }
        return sum;
    }
    // Hankel expansion, truncated at the smallest term
    let chi = z - T::FRAC_PI_4();
    let inv = z.recip();
    let (mut p, mut q) = (T::zero(), T::zero());
    let mut c = T::one();
    let mut pw = T::one();
    let mut last = T::infinity();
    for k in 0..60usize {
        if k > 0 {
            let odd = T::from_usize_lossy(2 * k - 1);
            c *= -odd * odd / (T::lit(8.0) * T::from_usize_lossy(k));
            pw *= inv;
        }
        let term = c * pw;
        if term.abs() > last {
            break;
        }
        last = term.abs();
        // i^k: k = 0, 1, 2, 3 -> 1, i, -1, -i
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if last < T::epsilon() * T::lit(1e-2) {
            break;
        }
    }
    (T::lit(2.0) / (T::PI() * z)).sqrt() * (p * chi.cos() - q * chi.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j0_integral(z: f64) -> f64 {
        // (1/pi) int_0^pi cos(z sin th) d th, trapezoid converges geometrically
        let n = 400 + 2 * z as usize;
        let s: f64 = (0..n).map(|i| (z * (std::f64::consts::PI * (i as f64 + 0.5) / n as f64).sin()).cos()).sum();
        s / n as f64
    }

    #[test]
    fn matches_integral_representation() {
        for z in [0.0, 0.5, 2.404825557695773, 7.0, 11.9, 12.1, 20.0, 55.5, 300.0, 4000.0] {
            let a = bessel_j0(z);
            let b = j0_integral(z);
            assert!((a - b).abs() < 1e-11, "z {z}: {a} vs {b}");
        }
        assert!(bessel_j0(2.404825557695773f64).abs() < 1e-12);
    }

    #[test]
    fn coefficients() {
        let a = hankel_coefficients(4);
        assert_eq!(a[0], 1.0);
        assert_eq!(a[1], -1.0 / 8.0);
        assert_eq!(a[2], 9.0 / 128.0);
        assert!((a[3] + 75.0 / 1024.0).abs() < 1e-16);
    }
}
