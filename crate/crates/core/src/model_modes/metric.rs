use crate::error::{domain, Result};
use crate::scalar::Real;

/// Quadratic form `q(eta) = sum r_jk eta_j eta_k` on the `d - 1` tangential variables.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelMetric<T> {
    dim: usize,
    coeffs: Vec<T>,
}

impl<T: Real> ModelMetric<T> {
    /// `coeffs` is the row-major `(d-1) x (d-1)` matrix `r`.
    pub fn new(dim: usize, coeffs: Vec<T>) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return domain(format!("dimension {dim} not in {{2, 3}}"));
        }
        let n = dim - 1;
        if coeffs.len() != n * n {
            return domain(format!("expected {} metric coefficients for d = {dim}, got {}", n * n, coeffs.len()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return domain("metric coefficients must be finite");
        }
        let tol = T::epsilon() * T::lit(64.0);
        for j in 0..n {
            for k in 0..j {
                let (a, b) = (coeffs[j * n + k], coeffs[k * n + j]);
                if (a - b).abs() > tol * (a.abs() + b.abs()).max(T::one()) {
                    return domain("metric coefficients are not symmetric");
                }
            }
        }
        // leading principal minors
        let m1 = coeffs[0];
        let positive = if n == 1 {
            m1 > T::zero()
        } else {
            m1 > T::zero() && coeffs[0] * coeffs[3] - coeffs[1] * coeffs[2] > T::zero()
        };
        if !positive {
            return domain("metric is not positive definite");
        }
        Ok(Self { dim, coeffs })
    }

    /// Friedlander case `q(eta) = |eta|^2`.
    pub fn identity(dim: usize) -> Result<Self> {
        let n = dim.saturating_sub(1);
        let coeffs = (0..n * n).map(|i| if i % (n + 1) == 0 { T::one() } else { T::zero() }).collect();
        Self::new(dim, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_isotropic(&self) -> bool {
        let n = self.dim - 1;
        let r0 = self.coeffs[0];
        (0..n).all(|j| (0..n).all(|k| self.coeffs[j * n + k] == if j == k { r0 } else { T::zero() }))
    }

    pub fn q_eval(&self, eta: &[T]) -> Result<T> {
        let n = self.dim - 1;
        if eta.len() != n {
            return domain(format!("eta has {} components, metric expects {n}", eta.len()));
        }
        Ok(self.q_unchecked(eta))
    }

    #[inline]
    pub(crate) fn q_unchecked(&self, eta: &[T]) -> T {
        let n = self.dim - 1;
        let mut s = T::zero();
        for j in 0..n {
            for k in 0..n {
                s += self.coeffs[j * n + k] * eta[j] * eta[k];
            }
        }
        s
    }

    /// Smallest and largest eigenvalues of `r`.
    pub fn eigen_bounds(&self) -> (T, T) {
        if self.dim == 2 {
            return (self.coeffs[0], self.coeffs[0]);
        }
        let (a, b, d) = (self.coeffs[0], self.coeffs[1], self.coeffs[3]);
        let mean = (a + d) * T::lit(0.5);
        let rad = (((a - d) * T::lit(0.5)).powi(2) + b * b).sqrt();
        (mean - rad, mean + rad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_form_examples() {
        let id = ModelMetric::<f64>::identity(3).unwrap();
        assert_eq!(id.q_eval(&[1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(id.q_eval(&[3.0, 4.0]).unwrap(), 25.0);
        let r = ModelMetric::new(3, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        assert_eq!(r.q_eval(&[1.0, 1.0]).unwrap(), 6.0);
        assert_eq!(r.eigen_bounds(), (1.0, 3.0));
        assert!(id.is_isotropic() && !r.is_isotropic());
    }

    #[test]
    fn invalid_metrics_are_rejected() {
        assert!(ModelMetric::new(3, vec![1.0, 2.0, 0.0, 1.0]).is_err());
        assert!(ModelMetric::new(3, vec![1.0, 2.0, 2.0, 1.0]).is_err());
        assert!(ModelMetric::new(2, vec![-1.0]).is_err());
        assert!(ModelMetric::new(4, vec![1.0; 9]).is_err());
        assert!(ModelMetric::new(3, vec![1.0]).is_err());
        let id = ModelMetric::<f64>::identity(2).unwrap();
        assert!(id.q_eval(&[1.0, 0.0]).is_err());
    }
}
