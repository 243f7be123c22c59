//! Direct quadrature of the gallery-mode sum; the reference evaluator.

use num_complex::Complex;
use rayon::prelude::*;

use crate::bessel::bessel_j0;
use crate::error::{domain, Error, Result};
use crate::model_modes::{GalleryMode, ModeBasis};
use crate::scalar::Real;

use super::config::{Propagator, SemiclassicalConfig};
use super::truncation::{mode_truncation, ModeRange};

/// Relative change between successive grid doublings accepted as converged.
pub const QUADRATURE_TOLERANCE: f64 = 1e-3;

/// Number of grid doublings attempted before reporting an accuracy error.
pub const MAX_REFINEMENTS: usize = 5;

/// Values below this fraction of the integrand's absolute mass count as zero
/// in the convergence test.
const ABSOLUTE_FLOOR: f64 = 1e-9;

/// Contributions below this multiple of `h^{-(d-1)}` are numerically zero;
/// single modes cut off by `chi` reach this level.
const NEGLIGIBLE: f64 = 1e-16;

/// Converged value with the grid that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation<T> {
    pub value: Complex<T>,
    /// Radial (or one-dimensional) node count of the accepted grid.
    pub radial_nodes: usize,
    /// Angular node count (1 unless `d = 3` with an anisotropic metric).
    pub angular_nodes: usize,
    pub modes: ModeRange,
}

/// `G_M(x, y, t; a) = h^{-(d-1)} sum_k int e^{it sqrt(lambda_k)} e^{i y.eta/h}
/// psi(|eta|) chi(h sqrt(lambda_k)) e_k(x, eta/h) e_k(a, eta/h) d eta`.
///
/// The tangential integral is a trapezoid rule over the cutoff support, with
/// `quad_density (1 + |t|/h + |y|/h)` starting nodes, doubled until successive
/// values agree to [`QUADRATURE_TOLERANCE`]. In `d = 2` the two signs of `eta`
/// are folded into `2 cos(y eta/h)`; in `d = 3` an isotropic metric reduces the
/// angular integral to `2 pi J0(|y| rho/h)` and an anisotropic one is integrated
/// on a polar grid.
#[derive(Debug, Clone)]
pub struct GreenEvaluator<T> {
    cfg: SemiclassicalConfig<T>,
    basis: ModeBasis<T>,
    range: ModeRange,
}

impl<T: Real> GreenEvaluator<T> {
    pub fn new(cfg: SemiclassicalConfig<T>, x_max: T) -> Result<Self> {
        cfg.validate()?;
        let range = mode_truncation(&cfg, x_max);
        let basis = ModeBasis::new(range.k_max)?;
        Ok(Self { cfg, basis, range })
    }

    pub fn config(&self) -> &SemiclassicalConfig<T> {
        &self.cfg
    }

    pub fn modes(&self) -> ModeRange {
        self.range
    }

    pub fn basis(&self) -> &ModeBasis<T> {
        &self.basis
    }

    pub fn evaluate(&self, t: T, x: T, y: &[T]) -> Result<Evaluation<T>> {
        self.evaluate_range(self.range, t, x, y)
    }

    /// The `k`-th term of [`GreenEvaluator::evaluate`].
    pub fn single_mode(&self, k: usize, t: T, x: T, y: &[T]) -> Result<Evaluation<T>> {
        if k == 0 {
            return domain("mode index starts at 1");
        }
        let basis;
        let b = if k <= self.basis.len() {
            &self.basis
        } else {
            basis = ModeBasis::new(k)?;
            &basis
        };
        self.integrate(b, ModeRange { k_min: k, k_max: k }, t, x, y)
    }

    fn evaluate_range(&self, range: ModeRange, t: T, x: T, y: &[T]) -> Result<Evaluation<T>> {
        self.integrate(&self.basis, range, t, x, y)
    }

    fn check_point(&self, t: T, x: T, y: &[T]) -> Result<()> {
        if !(t.abs() <= self.cfg.t_max) {
            return domain(format!("|t| = {} exceeds t_max = {}", t.abs(), self.cfg.t_max));
        }
        if !(x >= T::zero()) {
            return domain(format!("x = {x} must be nonnegative"));
        }
        if y.len() != self.cfg.dim() - 1 {
            return domain(format!("y has {} components, expected {}", y.len(), self.cfg.dim() - 1));
        }
        Ok(())
    }

    fn integrate(&self, basis: &ModeBasis<T>, range: ModeRange, t: T, x: T, y: &[T]) -> Result<Evaluation<T>> {
        self.check_point(t, x, y)?;
        let h = self.cfg.h;
        let y_abs = y.iter().map(|v| *v * *v).sum::<T>().sqrt();
        let oscillations = T::one() + t.abs() / h + y_abs / h;
        let start = (self.cfg.quad_density * oscillations).ceil().to_usize().unwrap_or(usize::MAX).max(32);
        let modes = &basis.modes()[range.k_min - 1..range.k_max];
        let anisotropic = self.cfg.dim() == 3 && !self.cfg.metric.is_isotropic();

        let mut n = start;
        let mut m = if anisotropic { start } else { 1 };
        let negligible = T::lit(NEGLIGIBLE) * h.powi(1 - self.cfg.dim() as i32);
        let (mut prev, _) = self.rule(modes, t, x, y, n, m)?;
        let mut last = prev;
        for _ in 0..MAX_REFINEMENTS {
            n *= 2;
            if anisotropic {
                m *= 2;
            }
            let (value, mass) = self.rule(modes, t, x, y, n, m)?;
            let change = (value - prev).norm();
            let scale = value.norm().max(mass * T::lit(ABSOLUTE_FLOOR));
            if change <= T::lit(QUADRATURE_TOLERANCE) * scale || value.norm().max(prev.norm()) < negligible {
                return Ok(Evaluation {
                    value,
                    radial_nodes: n,
                    angular_nodes: m,
                    modes: range,
                });
            }
            last = prev;
            prev = value;
        }
        let (fine, prev) = (prev, last);
        Err(Error::Accuracy {
            coarse: prev.norm().to_f64_lossy(),
            fine: fine.norm().to_f64_lossy(),
            relative: ((fine - prev).norm() / fine.norm()).to_f64_lossy(),
        })
    }

    /// Mode sum `sum_k P_k(t) chi psi e_k(x) e_k(a)` at one tangential frequency.
    fn mode_sum(&self, modes: &[GalleryMode<T>], t: T, x: T, s: T, q: T) -> Complex<T> {
        let h = self.cfg.h;
        let eta_sq = s * s / (h * h);
        let psi = self.cfg.cutoff.eval(s);
        if psi == T::zero() {
            return Complex::new(T::zero(), T::zero());
        }
        let q = q / (h * h);
        let mut acc = Complex::new(T::zero(), T::zero());
        for mode in modes {
            let omega = mode.eigenvalue_q(eta_sq, q).sqrt();
            let chi = match &self.cfg.frequency_cutoff {
                Some(c) => c.eval(h * omega),
                None => T::one(),
            };
            if chi == T::zero() {
                continue;
            }
            let amp = psi * chi * mode.eval_q(x, q) * mode.eval_q(self.cfg.a, q);
            acc += propagate(self.cfg.propagator, t * omega) * amp;
        }
        acc
    }

    /// One trapezoid evaluation on `n` radial and `m` angular panels; returns the value and absolute mass.
    fn rule(&self, modes: &[GalleryMode<T>], t: T, x: T, y: &[T], n: usize, m: usize) -> Result<(Complex<T>, T)> {
        let cfg = &self.cfg;
        let h = cfg.h;
        let (lo, hi) = (cfg.cutoff.s_min, cfg.cutoff.s_max);
        let ds = (hi - lo) / T::from_usize_lossy(n);
        let dim = cfg.dim();
        let isotropic = cfg.metric.is_isotropic();
        let r0 = cfg.metric.coeffs()[0];
        let y_abs = y.iter().map(|v| *v * *v).sum::<T>().sqrt();

        // interior nodes only: the cutoff vanishes at both ends
        let nodes: Vec<(Complex<T>, T)> = (1..n)
            .into_par_iter()
            .map(|i| {
                let s = lo + ds * T::from_usize_lossy(i);
                if dim == 2 {
                    let f = self.mode_sum(modes, t, x, s, r0 * s * s);
                    let w = T::lit(2.0) * (y[0] * s / h).cos() * ds / h;
                    (f * w, f.norm() * w.abs())
                } else if isotropic {
                    let f = self.mode_sum(modes, t, x, s, r0 * s * s);
                    let w = T::TAU() * s * bessel_j0(y_abs * s / h) * ds / (h * h);
                    (f * w, f.norm() * (T::TAU() * s * ds / (h * h)))
                } else {
                    let dth = T::TAU() / T::from_usize_lossy(m);
                    let mut acc = Complex::new(T::zero(), T::zero());
                    let mut mass = T::zero();
                    for j in 0..m {
                        let th = dth * T::from_usize_lossy(j);
                        let (c, sn) = (th.cos(), th.sin());
                        let eta = [s * c, s * sn];
                        let q = cfg.metric.q_unchecked(&eta);
                        let f = self.mode_sum(modes, t, x, s, q);
                        let phase = Complex::from_polar(T::one(), (y[0] * eta[0] + y[1] * eta[1]) / h);
                        let w = s * ds * dth / (h * h);
                        acc += f * phase * w;
                        mass += f.norm() * w;
                    }
                    (acc, mass)
                }
            })
            .collect();
        let mut value = Complex::new(T::zero(), T::zero());
        let mut mass = T::zero();
        for (v, a) in nodes {
            value += v;
            mass += a;
        }
        Ok((value, mass))
    }
}

#[inline]
pub(crate) fn propagate<T: Real>(p: Propagator, phase: T) -> Complex<T> {
    match p {
        Propagator::Plus => Complex::from_polar(T::one(), phase),
        Propagator::Minus => Complex::from_polar(T::one(), -phase),
        Propagator::Cosine => Complex::new(phase.cos(), T::zero()),
    }
}

/// One-shot [`GreenEvaluator::evaluate`]; builds the mode basis on every call.
pub fn green_evaluate<T: Real>(cfg: &SemiclassicalConfig<T>, t: T, x: T, y: &[T]) -> Result<Complex<T>> {
    let x_max = x.max(cfg.a * T::lit(2.0));
    Ok(GreenEvaluator::new(cfg.clone(), x_max)?.evaluate(t, x, y)?.value)
}

/// One-shot [`GreenEvaluator::single_mode`].
pub fn single_mode_wave<T: Real>(k: usize, cfg: &SemiclassicalConfig<T>, t: T, x: T, y: &[T]) -> Result<Complex<T>> {
    let x_max = x.max(cfg.a * T::lit(2.0));
    Ok(GreenEvaluator::new(cfg.clone(), x_max)?.single_mode(k, t, x, y)?.value)
}
