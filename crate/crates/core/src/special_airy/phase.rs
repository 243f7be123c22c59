//! The Airy phase `L(omega) = pi + i log(A_-(omega) / A_+(omega))` and its derivative.
//!
//! With `A_±(z) = e^{∓i pi/3} Ai(e^{∓i pi/3} z)` one has, for real `omega`,
//! `A_-(omega) = (Ai(-omega) + i Bi(-omega)) / 2` and `A_+ = conj(A_-)`, so
//! `L = pi - 2 arg A_-` on the branch continuous from `L(-inf) = 0`.
//! The Wronskian `Ai Bi' - Ai' Bi = 1/pi` then gives the closed form
//! `L'(omega) = 1 / (2 pi |A_-(omega)|^2)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::airy::{airy_ai, airy_ai_real, airy_pair};

/// Working range of [`phase_l`] and [`phase_l_prime`].
pub const PHASE_RANGE: (f64, f64) = (-50.0, 1.0e3);

/// Largest tolerated `|Im L|` before the evaluation is declared inconsistent.
pub const IMAGINARY_RESIDUE_THRESHOLD: f64 = 1e-9;

fn rotation<T: Real>(sign: T) -> Complex<T> {
    Complex::from_polar(T::one(), sign * T::FRAC_PI_3())
}

/// `A_+(z) = e^{-i pi/3} Ai(e^{-i pi/3} z)`.
pub fn a_plus<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    let r = rotation(-T::one());
    Ok(r * airy_ai(r * z)?)
}

/// `A_-(z) = e^{i pi/3} Ai(e^{i pi/3} z)`.
pub fn a_minus<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    let r = rotation(T::one());
    Ok(r * airy_ai(r * z)?)
}

/// `d/dz A_-(z) = e^{2i pi/3} Ai'(e^{i pi/3} z)`.
pub fn a_minus_derivative<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    let r = rotation(T::one());
    Ok(r * r * airy_pair(r * z)?.1)
}

fn check_phase_range<T: Real>(omega: T) -> Result<()> {
    let w = omega.to_f64_lossy();
    if !(w >= PHASE_RANGE.0 && w <= PHASE_RANGE.1) {
        return Err(Error::Range {
            value: w,
            range: "omega in [-50, 1e3]",
        });
    }
    Ok(())
}

fn residue_threshold<T: Real>() -> f64 {
    IMAGINARY_RESIDUE_THRESHOLD.max(1e3 * T::epsilon().to_f64_lossy())
}

/// Reference for the half-phase `L/2`, accurate to well under `pi`, used to pick the continuous branch.
fn half_phase_reference<T: Real>(omega: T) -> T {
    if omega <= T::zero() {
        T::zero()
    } else {
        T::FRAC_PI_4() + T::lit(2.0 / 3.0) * omega * omega.sqrt()
    }
}

/// `L(omega)`, real-valued and strictly increasing, `L(0) = pi/3`, `L(omega_k) = 2 pi k`.
///
/// The complex logarithm is formed from independently computed `A_+` and
/// `A_-`; its imaginary residue `log|A_-/A_+|` must stay below
/// [`IMAGINARY_RESIDUE_THRESHOLD`] and is discarded after the check.
/// The real part `pi - 2 arg A_-` is then evaluated as `2 atan2(Ai(-omega), Bi(-omega))`,
/// with `Bi(-omega) = 2 Im A_-(omega)`, which keeps full relative accuracy where
/// `L` is exponentially small (`omega -> -inf`).
pub fn phase_l<T: Real>(omega: T) -> Result<T> {
    check_phase_range(omega)?;
    let z = Complex::new(omega, T::zero());
    let am = a_minus(z)?;
    let ap = a_plus(z)?;
    let residue = (am / ap).norm().ln();
    let threshold = residue_threshold::<T>();
    if !(residue.abs().to_f64_lossy() <= threshold) {
        return Err(Error::NumericalConsistency {
            what: "imaginary part of L(omega)",
            residual: residue.to_f64_lossy(),
            threshold,
        });
    }
    let ai = airy_ai_real(-omega)?;
    let bi = am.im * T::lit(2.0);
    let principal = ai.atan2(bi);
    let turns = ((half_phase_reference(omega) - principal) / T::TAU()).round();
    Ok((principal + turns * T::TAU()) * T::lit(2.0))
}

/// `L'(omega) = 1 / (2 pi |A_-(omega)|^2)`, strictly positive.
pub fn phase_l_prime<T: Real>(omega: T) -> Result<T> {
    check_phase_range(omega)?;
    let am = a_minus(Complex::new(omega, T::zero()))?;
    Ok((T::TAU() * am.norm_sqr()).recip())
}

/// `L'` from the logarithmic derivative `-2 Im(A_-'/A_-)`, without the Wronskian reduction.
pub fn phase_l_prime_logarithmic<T: Real>(omega: T) -> Result<T> {
    check_phase_range(omega)?;
    let z = Complex::new(omega, T::zero());
    let ratio = a_minus_derivative(z)? / a_minus(z)?;
    Ok(-T::lit(2.0) * ratio.im)
}

/// Fourth-order centered difference of [`phase_l`]; cross-check oracle for [`phase_l_prime`].
pub fn phase_l_prime_centered<T: Real>(omega: T, step: T) -> Result<T> {
    let f = |w: T| phase_l(w);
    let d1 = f(omega + step)? - f(omega - step)?;
    let d2 = f(omega + step * T::lit(2.0))? - f(omega - step * T::lit(2.0))?;
    Ok((T::lit(8.0) * d1 - d2) / (T::lit(12.0) * step))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_gauss_kronrod;
    use crate::special_airy::airy::airy_ai_real;
    use crate::special_airy::zeros::AiryZeroTable;
    use proptest::prelude::*;

    #[test]
    fn value_at_origin() {
        let l = phase_l(0.0f64).unwrap();
        assert!((l - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
    }

    #[test]
    fn hits_multiples_of_two_pi_at_zeros() {
        let table = AiryZeroTable::<f64>::new(100).unwrap();
        for (i, &w) in table.zeros().iter().enumerate() {
            let k = (i + 1) as f64;
            let l = phase_l(w).unwrap();
            assert!((l - 2.0 * std::f64::consts::PI * k).abs() < 1e-8, "k = {k}: {l}");
        }
    }

    #[test]
    fn vanishes_toward_minus_infinity() {
        let l = phase_l(-10.0f64).unwrap();
        assert!(l > 0.0 && l < 1e-2, "{l}");
        let far = phase_l(-50.0f64).unwrap();
        assert!(far > 0.0 && far < l);
    }

    #[test]
    fn monotone_on_working_range() {
        let mut prev = phase_l(-50.0f64).unwrap();
        let mut w = -50.0;
        loop {
            w += if w < 20.0 { 0.05 } else { 0.5 };
            if w > 1.0e3 {
                break;
            }
            let l = phase_l(w).unwrap();
            assert!(l > prev, "not increasing at {w}");
            prev = l;
        }
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(matches!(phase_l(-50.5f64), Err(Error::Range { .. })));
        assert!(phase_l_prime(1.0e3 + 1.0).is_err());
    }

    #[test]
    fn derivative_matches_differencing_and_log_derivative() {
        for w in [-20.0f64, -3.0, 0.0, 1.7, 10.0, 123.0, 900.0] {
            let lp = phase_l_prime(w).unwrap();
            let step = 1e-3 / (1.0 + w.abs()).sqrt();
            let fd = phase_l_prime_centered(w, step).unwrap();
            let lg = phase_l_prime_logarithmic(w).unwrap();
            assert!(lp > 0.0);
            assert!((lp - fd).abs() <= 1e-8 * lp.max(1.0), "omega {w}: {lp} vs {fd}");
            assert!((lp - lg).abs() <= 1e-10 * lp.max(1.0), "omega {w}: {lp} vs {lg}");
        }
    }

    #[test]
    fn derivative_grows_like_two_sqrt_omega() {
        let w = 900.0f64;
        let lp = phase_l_prime(w).unwrap();
        assert!((lp / (2.0 * w.sqrt()) - 1.0).abs() < 1e-4);
    }

    /// `L'(omega_k) = 2 pi int_0^inf Ai^2(x - omega_k) dx = 2 pi Ai'(-omega_k)^2`.
    #[test]
    fn derivative_at_zeros_is_two_pi_times_airy_energy() {
        let table = AiryZeroTable::<f64>::new(20).unwrap();
        for &wk in table.zeros() {
            let (energy, err) =
                adaptive_gauss_kronrod(|x| airy_ai_real(x - wk).unwrap().powi(2), 0.0, wk + 40.0, 1e-13, 4000);
            assert!(err < 1e-12);
            let lp = phase_l_prime(wk).unwrap();
            assert!((lp - std::f64::consts::TAU * energy).abs() < 1e-8 * lp, "omega {wk}");
        }
    }

    #[test]
    fn single_precision_phase() {
        let l = phase_l(2.0f32).unwrap();
        let d = phase_l(2.0f64).unwrap();
        assert!((l as f64 - d).abs() < 1e-4);
    }

    proptest! {
        #[test]
        fn prop_increasing(w in -49.0f64..990.0, dw in 1e-3f64..5.0) {
            let a = phase_l(w).unwrap();
            let b = phase_l(w + dw).unwrap();
            prop_assert!(b > a);
        }

        #[test]
        fn prop_derivative_positive(w in -50.0f64..1000.0) {
            prop_assert!(phase_l_prime(w).unwrap() > 0.0);
        }
    }
}
