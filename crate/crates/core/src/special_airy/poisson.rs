//! Weak (tested) form of the Airy–Poisson identity
//! `sum_N e^{-iN L(omega)} = 2 pi sum_k delta(omega - omega_k) / L'(omega_k)`.

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::quadrature::composite_gauss_nodes;
use crate::scalar::Real;

use super::phase::{phase_l, phase_l_prime, PHASE_RANGE};
use super::zeros::AiryZeroTable;

/// Floor of the denominator in the relative discrepancy.
pub const DISCREPANCY_FLOOR: f64 = 1e-12;

/// Gaussians are cut at this many widths, where they are below `e^{-72}`.
const GAUSSIAN_CUT: f64 = 12.0;

const GAUSS_ORDER: usize = 16;

/// Test function descriptor.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction<T> {
    /// `exp(-(omega - center)^2 / (2 width^2))`, truncated at `12 width`.
    Gaussian { center: T, width: T },
    /// `exp(1 - 1/(1 - u^2))` with `u = (omega - center)/half_width`, zero for `|u| >= 1`.
    Bump { center: T, half_width: T },
    Sum(Vec<TestFunction<T>>),
}

impl<T: Real> TestFunction<T> {
    pub fn eval(&self, w: T) -> T {
        match self {
            Self::Gaussian { center, width } => {
                let u = (w - *center) / *width;
                if u.abs() >= T::lit(GAUSSIAN_CUT) {
                    T::zero()
                } else {
                    (-u * u * T::lit(0.5)).exp()
                }
            }
            Self::Bump { center, half_width } => {
                let u = (w - *center) / *half_width;
                if u.abs() >= T::one() {
                    T::zero()
                } else {
                    (T::one() - (T::one() - u * u).recip()).exp()
                }
            }
            Self::Sum(parts) => parts.iter().map(|p| p.eval(w)).sum(),
        }
    }

    /// Closed interval containing the support.
    pub fn support(&self) -> (T, T) {
        match self {
            Self::Gaussian { center, width } => {
                let r = width.abs() * T::lit(GAUSSIAN_CUT);
                (*center - r, *center + r)
            }
            Self::Bump { center, half_width } => (*center - half_width.abs(), *center + half_width.abs()),
            Self::Sum(parts) => parts
                .iter()
                .map(|p| p.support())
                .fold((T::infinity(), T::neg_infinity()), |acc, s| (acc.0.min(s.0), acc.1.max(s.1))),
        }
    }
}

/// Fejér weight `1 - |N|/(N_max + 1)`.
pub fn fejer_weight<T: Real>(n: i64, n_max: usize) -> T {
    let n_abs = T::from_usize_lossy(n.unsigned_abs() as usize);
    (T::one() - n_abs / T::from_usize_lossy(n_max + 1)).max(T::zero())
}

/// Both sides of the tested identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonPair<T> {
    pub lhs: Complex<T>,
    pub rhs: T,
    pub discrepancy: T,
}

/// `lhs = sum_{|N| <= N_max} w_N int e^{-iN L} phi`, `rhs = 2 pi sum_{k <= k_max} phi(omega_k)/L'(omega_k)`.
///
/// The integrals use composite 16-point Gauss–Legendre panels fine enough for
/// the fastest oscillation `N_max max L'` on the support.
pub fn airy_poisson_pair<T: Real>(phi: &TestFunction<T>, n_max: usize, k_max: usize) -> Result<PoissonPair<T>> {
    if n_max == 0 || k_max == 0 {
        return domain("N_max and k_max must be at least 1");
    }
    let (lo, hi) = phi.support();
    let (rlo, rhi) = (T::lit(PHASE_RANGE.0), T::lit(PHASE_RANGE.1));
    if !(lo >= rlo && hi <= rhi && lo < hi) {
        return domain(format!(
            "test function support [{lo}, {hi}] not inside [{}, {}]",
            PHASE_RANGE.0, PHASE_RANGE.1
        ));
    }

    // L' is increasing for omega > 0; sampling the ends and the middle bounds it on the support.
    let mut lp_max = T::zero();
    for s in 0..=32 {
        let w = lo + (hi - lo) * T::from_usize_lossy(s) / T::lit(32.0);
        lp_max = lp_max.max(phase_l_prime(w)?);
    }
    let phase_span = (hi - lo) * lp_max * T::from_usize_lossy(n_max);
    let panels = (phase_span / T::TAU()).ceil().to_usize().unwrap_or(1).max(64);
    let (nodes, weights) = composite_gauss_nodes(lo, hi, panels, GAUSS_ORDER);

    let mut lhs = Complex::new(T::zero(), T::zero());
    for (w, q) in nodes.iter().zip(&weights) {
        let f = phi.eval(*w);
        if f == T::zero() {
            continue;
        }
        let rot = Complex::from_polar(T::one(), -phase_l(*w)?);
        let mut term = Complex::new(T::one(), T::zero());
        let mut kernel = Complex::new(T::one(), T::zero());
        for n in 1..=n_max {
            term = term * rot;
            let wn = fejer_weight::<T>(n as i64, n_max);
            // N and -N together
            kernel += Complex::new(term.re * wn * T::lit(2.0), T::zero());
        }
        lhs += kernel * (f * *q);
    }

    let table = AiryZeroTable::<T>::new(k_max)?;
    let mut rhs = T::zero();
    for &wk in table.zeros() {
        if wk < lo || wk > hi {
            continue;
        }
        rhs += phi.eval(wk) / phase_l_prime(wk)?;
    }
    rhs *= T::TAU();

    let denom = rhs.abs().max(T::lit(DISCREPANCY_FLOOR));
    let discrepancy = (lhs - Complex::new(rhs, T::zero())).norm() / denom;
    Ok(PoissonPair { lhs, rhs, discrepancy })
}
