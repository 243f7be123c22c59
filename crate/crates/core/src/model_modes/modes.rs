use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::special_airy::airy::ai_real_unchecked;
use crate::special_airy::{phase_l_prime, AiryZeroTable};

use super::metric::ModelMetric;

/// The `k`-th gallery mode `e_k(x, eta) = f_k q^{1/6} k^{-1/6} Ai(q^{1/3} x - omega_k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GalleryMode<T> {
    pub k: usize,
    pub omega: T,
    /// `int_0^inf Ai^2(x - omega_k) dx`, equal to `L'(omega_k) / (2 pi)`.
    pub energy: T,
    /// Positive normalization `k^{1/6} / sqrt(energy)`.
    pub f_k: T,
}

impl<T: Real> GalleryMode<T> {
    pub fn new(k: usize, omega: T) -> Result<Self> {
        if k == 0 {
            return domain("mode index starts at 1");
        }
        let energy = phase_l_prime(omega)? / T::TAU();
        let f_k = T::from_usize_lossy(k).powf(T::lit(1.0 / 6.0)) / energy.sqrt();
        Ok(Self { k, omega, energy, f_k })
    }

    /// `e_k` in terms of `q = q(eta)` directly; no argument checks.
    #[inline]
    pub fn eval_q(&self, x: T, q: T) -> T {
        let c = q.cbrt();
        c.sqrt() * ai_real_unchecked(c * x - self.omega) / self.energy.sqrt()
    }

    /// `lambda_k` from `|eta|^2` and `q(eta)`.
    #[inline]
    pub fn eigenvalue_q(&self, eta_sq: T, q: T) -> T {
        eta_sq + self.omega * q.cbrt().powi(2)
    }
}

/// The first `K` modes together with the zero table that produced them.
#[derive(Debug, Clone)]
pub struct ModeBasis<T> {
    modes: Vec<GalleryMode<T>>,
    table: AiryZeroTable<T>,
}

impl<T: Real> ModeBasis<T> {
    pub fn new(count: usize) -> Result<Self> {
        let table = AiryZeroTable::new(count)?;
        let modes = table
            .zeros()
            .iter()
            .enumerate()
            .map(|(i, &w)| GalleryMode::new(i + 1, w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { modes, table })
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Mode `k`, 1-based.
    pub fn mode(&self, k: usize) -> &GalleryMode<T> {
        &self.modes[k - 1]
    }

    pub fn modes(&self) -> &[GalleryMode<T>] {
        &self.modes
    }

    pub fn table(&self) -> &AiryZeroTable<T> {
        &self.table
    }
}

fn nonzero_eta<T: Real>(metric: &ModelMetric<T>, eta: &[T]) -> Result<(T, T)> {
    let q = metric.q_eval(eta)?;
    let eta_sq: T = eta.iter().map(|e| *e * *e).sum();
    if eta_sq == T::zero() {
        return domain("eta must be nonzero");
    }
    Ok((eta_sq, q))
}

/// `lambda_k(eta) = |eta|^2 + omega_k q(eta)^{2/3}`.
pub fn eigenvalue<T: Real>(mode: &GalleryMode<T>, eta: &[T], metric: &ModelMetric<T>) -> Result<T> {
    let (eta_sq, q) = nonzero_eta(metric, eta)?;
    Ok(mode.eigenvalue_q(eta_sq, q))
}

/// `e_k(x, eta)`, unit norm in `L^2(R_+)` and zero at `x = 0`.
pub fn mode_eval<T: Real>(mode: &GalleryMode<T>, x: T, eta: &[T], metric: &ModelMetric<T>) -> Result<T> {
    if !(x >= T::zero()) {
        return domain(format!("x = {x} must be nonnegative"));
    }
    let (_, q) = nonzero_eta(metric, eta)?;
    Ok(mode.eval_q(x, q))
}

/// `sum_{k <= K} e_k(x, eta) e_k(a, eta)`, the truncated Dirac mass at `x = a`.
pub fn dirac_partial_sum<T: Real>(
    basis: &ModeBasis<T>,
    a: T,
    x: T,
    eta: &[T],
    count: usize,
    metric: &ModelMetric<T>,
) -> Result<T> {
    if !(a > T::zero()) {
        return domain(format!("source depth a = {a} must be positive"));
    }
    if count == 0 || count > basis.len() {
        return domain(format!("K = {count} outside 1..={}", basis.len()));
    }
    if !(x >= T::zero()) {
        return domain(format!("x = {x} must be nonnegative"));
    }
    let (_, q) = nonzero_eta(metric, eta)?;
    Ok(basis.modes()[..count].iter().map(|m| m.eval_q(x, q) * m.eval_q(a, q)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{adaptive_gauss_kronrod, composite_gauss_nodes};
    use crate::special_airy::airy_ai_real;

    fn friedlander() -> ModelMetric<f64> {
        ModelMetric::identity(2).unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        let basis = ModeBasis::<f64>::new(5).unwrap();
        let m = friedlander();
        let l1 = eigenvalue(basis.mode(1), &[1.0], &m).unwrap();
        assert!((l1 - (1.0 + 2.338107410459767)).abs() < 1e-12);
        let ls: Vec<f64> = basis.modes().iter().map(|md| eigenvalue(md, &[0.7], &m).unwrap()).collect();
        assert!(ls.windows(2).all(|p| p[0] < p[1]));
        let r = ModelMetric::new(3, vec![2.0, 0.3, 0.3, 1.0]).unwrap();
        let eta = [0.4, -1.1];
        let s: f64 = 2.0;
        let q = r.q_eval(&eta).unwrap();
        let direct = eigenvalue(basis.mode(3), &[s * eta[0], s * eta[1]], &r).unwrap();
        let scaled = s * s * (eta[0] * eta[0] + eta[1] * eta[1]) + basis.mode(3).omega * s.powf(4.0 / 3.0) * q.powf(2.0 / 3.0);
        assert!((direct - scaled).abs() < 1e-12 * scaled);
        assert!(eigenvalue(basis.mode(1), &[0.0], &m).is_err());
    }

    #[test]
    fn normalization_two_ways() {
        for k in [1usize, 2, 7, 20, 30] {
            let mode = GalleryMode::new(k, crate::special_airy::airy_zero::<f64>(k).unwrap()).unwrap();
            let (direct, _) = adaptive_gauss_kronrod(
                |x| airy_ai_real(x - mode.omega).unwrap().powi(2),
                0.0,
                mode.omega + 40.0,
                1e-14,
                4000,
            );
            assert!((mode.energy - direct).abs() < 1e-10, "k = {k}");
            let fk_direct = (k as f64).powf(1.0 / 6.0) / direct.sqrt();
            assert!((mode.f_k - fk_direct).abs() < 1e-6 * fk_direct);
        }
        let m1 = GalleryMode::new(1, 2.338107410459767f64).unwrap();
        assert!((m1.energy - 0.4916966179).abs() < 1e-9);
    }

    #[test]
    fn orthonormal_up_to_thirty() {
        let basis = ModeBasis::<f64>::new(30).unwrap();
        let m = friedlander();
        for eta in [0.6f64, 1.0, 1.9] {
            let q = eta * eta;
            let x_end = (basis.mode(30).omega + 40.0) / q.cbrt();
            let (xs, ws) = composite_gauss_nodes(0.0, x_end, 400, 16);
            let vals: Vec<Vec<f64>> = basis
                .modes()
                .iter()
                .map(|md| xs.iter().map(|&x| mode_eval(md, x, &[eta], &m).unwrap()).collect())
                .collect();
            for j in 0..30 {
                for k in 0..=j {
                    let ip: f64 = ws.iter().enumerate().map(|(i, w)| w * vals[j][i] * vals[k][i]).sum();
                    let expect = if j == k { 1.0 } else { 0.0 };
                    let tol = if j == k { 1e-6 } else { 1e-5 };
                    assert!((ip - expect).abs() < tol, "eta {eta}, ({j}, {k}): {ip}");
                }
            }
        }
    }

    #[test]
    fn dirichlet_and_decay() {
        let basis = ModeBasis::<f64>::new(30).unwrap();
        let m = friedlander();
        for md in basis.modes() {
            for eta in [0.6f64, 1.0, 1.9] {
                assert!(mode_eval(md, 0.0, &[eta], &m).unwrap().abs() < 1e-9);
                let turn = (md.omega + 5.0) / (eta * eta).cbrt();
                let peak = (0..200)
                    .map(|i| mode_eval(md, turn * i as f64 / 200.0, &[eta], &m).unwrap().abs())
                    .fold(0.0, f64::max);
                let beyond = mode_eval(md, turn, &[eta], &m).unwrap().abs();
                let far = mode_eval(md, turn + 3.0 / (eta * eta).cbrt(), &[eta], &m).unwrap().abs();
                assert!(beyond < 1e-3 * peak && far < 1e-3 * beyond, "k {} eta {eta}: {} {}", md.k, beyond / peak, far / beyond);
            }
        }
        assert!(mode_eval(basis.mode(1), -0.1, &[1.0], &m).is_err());
    }

    #[test]
    fn finite_difference_residual() {
        let basis = ModeBasis::<f64>::new(30).unwrap();
        let m = friedlander();
        let dx = 1e-3;
        for &k in &[1usize, 10, 30] {
            let md = basis.mode(k);
            for eta in [0.6f64, 1.9] {
                let q = eta * eta;
                let lambda = eigenvalue(md, &[eta], &m).unwrap();
                let n = ((md.omega + 8.0) / q.cbrt() / dx) as usize;
                let e = |i: usize| mode_eval(md, i as f64 * dx, &[eta], &m).unwrap();
                let (mut res, mut scale) = (0.0f64, 0.0f64);
                for i in 1..n {
                    let x = i as f64 * dx;
                    let second = (e(i + 1) - 2.0 * e(i) + e(i - 1)) / (dx * dx);
                    let lhs = -second + (eta * eta + x * q) * e(i);
                    res = res.max((lhs - lambda * e(i)).abs());
                    scale = scale.max((lambda * e(i)).abs());
                }
                assert!(res < 1e-4 * scale, "k {k} eta {eta}: {}", res / scale);
            }
        }
    }

    #[test]
    fn dirac_weak_pairing() {
        let basis = ModeBasis::<f64>::new(400).unwrap();
        let m = friedlander();
        let a = 1.0;
        // Gaussian at a, reflected oddly so that it meets the Dirichlet condition
        let g = |x: f64| (-((x - a) / 0.5).powi(2)).exp() - (-((x + a) / 0.5).powi(2)).exp();
        let (xs, ws) = composite_gauss_nodes(0.0, 100.0, 3000, 8);
        let pairing = |count: usize| -> f64 {
            xs.iter()
                .zip(&ws)
                .map(|(&x, w)| w * g(x) * dirac_partial_sum(&basis, a, x, &[1.0], count, &m).unwrap())
                .sum()
        };
        let mut prev = f64::INFINITY;
        for count in [50usize, 100, 200, 400] {
            let err = (pairing(count) - g(a)).abs();
            assert!(err < 2.0 * prev, "K {count}: {err}");
            if count == 200 {
                assert!(err < 1e-2, "{err}");
            }
            prev = err;
        }
        let s1 = dirac_partial_sum(&basis, 0.7, 1.3, &[1.0], 50, &m).unwrap();
        let s2 = dirac_partial_sum(&basis, 1.3, 0.7, &[1.0], 50, &m).unwrap();
        assert_eq!(s1, s2);
        assert!(dirac_partial_sum(&basis, 0.0, 1.0, &[1.0], 5, &m).is_err());
    }
}
