//! Identity checks behind `verify-identities`: the Airy phase, the weak
//! Poisson pairing and the gallery eigenbasis.
//!
//! Every check is a scalar error compared against a tolerance. Checks marked
//! non-gating are reported but do not decide the exit status; they record
//! relations whose literal form is known not to hold numerically.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::model_modes::{eigenvalue, mode_eval, ModeBasis, ModelMetric};
use crate::quadrature::{adaptive_gauss_kronrod, composite_gauss_nodes};
use crate::special_airy::{
    airy_ai_real, airy_poisson_pair, airy_zero, phase_l, phase_l_prime, phase_l_prime_centered, AiryZeroTable,
    TestFunction,
};

/// Zeros used by the phase checks.
pub const PHASE_ZEROS: usize = 20;
/// Modes used by the eigenbasis checks.
pub const BASIS_MODES: usize = 30;
/// Tangential frequencies of the eigenbasis checks.
pub const BASIS_ETAS: [f64; 3] = [0.6, 1.0, 1.9];
/// Random samples drawn by [`sampled_checks`].
pub const SAMPLES: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub family: &'static str,
    pub label: String,
    pub value: f64,
    pub target: f64,
    pub error: f64,
    pub tolerance: f64,
    pub gating: bool,
}

impl IdentityCheck {
    fn new(family: &'static str, label: impl Into<String>, value: f64, target: f64, error: f64, tolerance: f64) -> Self {
        Self {
            family,
            label: label.into(),
            value,
            target,
            error,
            tolerance,
            gating: true,
        }
    }

    fn informational(mut self) -> Self {
        self.gating = false;
        self
    }

    pub fn passed(&self) -> bool {
        self.error.is_finite() && self.error <= self.tolerance
    }
}

/// Worst case of one family of checks.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySummary {
    pub family: &'static str,
    pub count: usize,
    pub worst_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub gating: bool,
}

/// One summary per family, in order of first appearance.
pub fn summarize(checks: &[IdentityCheck]) -> Vec<FamilySummary> {
    let mut out: Vec<FamilySummary> = Vec::new();
    for c in checks {
        match out.iter_mut().find(|s| s.family == c.family) {
            Some(s) => {
                s.count += 1;
                s.worst_error = s.worst_error.max(c.error);
                s.tolerance = s.tolerance.min(c.tolerance);
                s.passed &= c.passed();
            }
            None => out.push(FamilySummary {
                family: c.family,
                count: 1,
                worst_error: c.error,
                tolerance: c.tolerance,
                passed: c.passed(),
                gating: c.gating,
            }),
        }
    }
    out
}

fn relative(value: f64, target: f64) -> f64 {
    (value - target).abs() / target.abs()
}

/// `int_0^inf Ai^2(x - omega) dx` by adaptive Gauss-Kronrod.
pub fn airy_energy_quadrature(omega: f64) -> f64 {
    adaptive_gauss_kronrod(|x| airy_ai_real(x - omega).unwrap_or(0.0).powi(2), 0.0, omega + 40.0, 1e-14, 4000).0
}

/// `L(0) = pi/3`, `L(omega_k) = 2 pi k` and `L'(omega_k)` against the energy quadrature.
///
/// The derivative is checked as `L' = 2 pi int Ai^2`, which is what the
/// Wronskian forces; the unnormalized `L' = int Ai^2` is kept as a
/// non-gating row.
pub fn phase_checks() -> Result<Vec<IdentityCheck>> {
    let third = std::f64::consts::FRAC_PI_3;
    let l0 = phase_l(0.0f64)?;
    let mut out = vec![IdentityCheck::new("L(0)=pi/3", "0", l0, third, (l0 - third).abs(), 1e-10)];
    let table = AiryZeroTable::<f64>::new(PHASE_ZEROS)?;
    for (i, &w) in table.zeros().iter().enumerate() {
        let k = i + 1;
        let l = phase_l(w)?;
        let target = std::f64::consts::TAU * k as f64;
        out.push(IdentityCheck::new("L(omega_k)=2pi k", format!("k={k}"), l, target, (l - target).abs(), 1e-8));
    }
    for (i, &w) in table.zeros().iter().enumerate() {
        let k = i + 1;
        let lp = phase_l_prime(w)?;
        let energy = airy_energy_quadrature(w);
        let target = std::f64::consts::TAU * energy;
        out.push(IdentityCheck::new(
            "L'(omega_k)=2pi int Ai^2",
            format!("k={k}"),
            lp,
            target,
            relative(lp, target),
            1e-6,
        ));
        out.push(
            IdentityCheck::new("L'(omega_k)=int Ai^2", format!("k={k}"), lp, energy, relative(lp, energy), 1e-6)
                .informational(),
        );
    }
    Ok(out)
}

/// Gaussian bump at `omega_2` with Fejer weights: the discrepancy must shrink
/// each time `N_max` doubles. The absolute level `1e-3` at `N_max = 200` is
/// reported without gating; Fejer summation converges only like `1/N_max`.
pub fn poisson_checks() -> Result<Vec<IdentityCheck>> {
    let phi = TestFunction::Gaussian {
        center: airy_zero::<f64>(2)?,
        width: 0.3,
    };
    let mut out = Vec::new();
    let mut prev: Option<f64> = None;
    for n in [25usize, 50, 100, 200, 400] {
        let d = airy_poisson_pair(&phi, n, 50)?.discrepancy;
        if let Some(p) = prev {
            out.push(IdentityCheck::new("poisson discrepancy decreases", format!("N_max={n}"), d, p, d / p, 1.0));
        }
        if n == 200 {
            out.push(IdentityCheck::new("poisson discrepancy < 1e-3", "N_max=200", d, 0.0, d, 1e-3).informational());
        }
        prev = Some(d);
    }
    Ok(out)
}

/// Orthonormality, boundary values and the finite-difference eigen-residual of
/// the first [`BASIS_MODES`] modes at each of [`BASIS_ETAS`].
pub fn eigenbasis_checks() -> Result<Vec<IdentityCheck>> {
    let basis = ModeBasis::<f64>::new(BASIS_MODES)?;
    let metric = ModelMetric::identity(2)?;
    let mut out = Vec::new();
    for eta in BASIS_ETAS {
        let c = (eta * eta).cbrt();
        let x_end = (basis.mode(BASIS_MODES).omega + 40.0) / c;
        let (xs, ws) = composite_gauss_nodes(0.0, x_end, 400, 16);
        let vals: Vec<Vec<f64>> = basis
            .modes()
            .iter()
            .map(|m| xs.iter().map(|&x| mode_eval(m, x, &[eta], &metric)).collect())
            .collect::<Result<_>>()?;
        let (mut norm_err, mut orth_err) = (0.0f64, 0.0f64);
        for j in 0..BASIS_MODES {
            for k in 0..=j {
                let ip: f64 = ws.iter().zip(vals[j].iter().zip(&vals[k])).map(|(w, (u, v))| w * u * v).sum();
                if j == k {
                    norm_err = norm_err.max((ip - 1.0).abs());
                } else {
                    orth_err = orth_err.max(ip.abs());
                }
            }
        }
        let label = format!("eta={eta}");
        out.push(IdentityCheck::new("unit norm", label.clone(), 1.0 + norm_err, 1.0, norm_err, 1e-6));
        out.push(IdentityCheck::new("orthogonality", label.clone(), orth_err, 0.0, orth_err, 1e-5));
        let boundary = basis
            .modes()
            .iter()
            .map(|m| mode_eval(m, 0.0, &[eta], &metric).map(f64::abs))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        out.push(IdentityCheck::new("dirichlet boundary", label, boundary, 0.0, boundary, 1e-9));
    }
    for k in [1usize, 10, 30] {
        for eta in [BASIS_ETAS[0], BASIS_ETAS[2]] {
            let r = fd_residual(&basis, &metric, k, eta)?;
            out.push(IdentityCheck::new("eigen residual", format!("k={k},eta={eta}"), r, 0.0, r, 1e-4));
        }
    }
    Ok(out)
}

/// Relative residual of `-e'' + (eta^2 + x eta^2) e = lambda e` on a step-`1e-3` grid.
fn fd_residual(basis: &ModeBasis<f64>, metric: &ModelMetric<f64>, k: usize, eta: f64) -> Result<f64> {
    let m = basis.mode(k);
    let q = eta * eta;
    let lambda = eigenvalue(m, &[eta], metric)?;
    let dx = 1e-3;
    let n = ((m.omega + 8.0) / q.cbrt() / dx) as usize;
    let e: Vec<f64> = (0..=n).map(|i| mode_eval(m, i as f64 * dx, &[eta], metric)).collect::<Result<_>>()?;
    let (mut res, mut scale) = (0.0f64, 0.0f64);
    for i in 1..n {
        let x = i as f64 * dx;
        let second = (e[i + 1] - 2.0 * e[i] + e[i - 1]) / (dx * dx);
        res = res.max((-second + (q + x * q) * e[i] - lambda * e[i]).abs());
        scale = scale.max((lambda * e[i]).abs());
    }
    Ok(res / scale)
}

/// Seeded spot checks: `L'` against a centered difference and monotonicity of
/// `L` at random frequencies, and the eigen-residual at random `(k, eta)`.
pub fn sampled_checks(seed: u64) -> Result<Vec<IdentityCheck>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    let basis = ModeBasis::<f64>::new(BASIS_MODES)?;
    let metric = ModelMetric::identity(2)?;
    for _ in 0..SAMPLES {
        let w: f64 = rng.gen_range(-3.0..40.0);
        let label = format!("omega={w:.6}");
        let lp = phase_l_prime(w)?;
        let fd = phase_l_prime_centered(w, 1e-3)?;
        out.push(IdentityCheck::new("L' centered difference", label.clone(), lp, fd, relative(lp, fd), 1e-6));
        let step: f64 = rng.gen_range(0.01..1.0);
        let rise = phase_l(w + step)? - phase_l(w)?;
        // negative rise counts as an error above the zero tolerance
        let err = if rise > 0.0 { 0.0 } else { 1.0 - rise };
        out.push(IdentityCheck::new("L increasing", format!("{label},step={step:.6}"), rise, 0.0, err, 0.0));
        let k = rng.gen_range(1..=BASIS_MODES);
        let eta: f64 = rng.gen_range(0.6..1.9);
        let r = fd_residual(&basis, &metric, k, eta)?;
        out.push(IdentityCheck::new("eigen residual (sampled)", format!("k={k},eta={eta:.6}"), r, 0.0, r, 1e-4));
    }
    Ok(out)
}

/// All identity checks in a fixed order.
pub fn identity_suite(seed: u64) -> Result<Vec<IdentityCheck>> {
    let mut out = phase_checks()?;
    out.extend(poisson_checks()?);
    out.extend(eigenbasis_checks()?);
    out.extend(sampled_checks(seed)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summaries_keep_family_order_and_worst_error() {
        let checks = vec![
            IdentityCheck::new("a", "1", 1.0, 1.0, 1e-9, 1e-8),
            IdentityCheck::new("b", "1", 1.0, 1.0, 0.5, 1e-8).informational(),
            IdentityCheck::new("a", "2", 1.0, 1.0, 2e-8, 1e-8),
        ];
        let s = summarize(&checks);
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].family, s[0].count, s[0].passed), ("a", 2, false));
        assert_eq!(s[0].worst_error, 2e-8);
        assert!(!s[1].gating);
    }

    #[test]
    fn sampled_checks_are_seeded() {
        let a = sampled_checks(7).unwrap();
        let b = sampled_checks(7).unwrap();
        let c = sampled_checks(8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a[0].label, c[0].label);
        assert!(a.iter().all(IdentityCheck::passed), "{:?}", a.iter().find(|c| !c.passed()));
    }

    #[test]
    fn non_finite_error_fails() {
        assert!(!IdentityCheck::new("x", "", f64::NAN, 0.0, f64::NAN, 1.0).passed());
    }
}
