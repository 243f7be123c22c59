//! Small quadrature toolbox: Gauss–Legendre panels, adaptive Gauss–Kronrod, composite Simpson.

use crate::scalar::Real;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        // Newton on P_n in f64 from the Chebyshev-like guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = T::lit(-x);
        nodes[n - 1 - i] = T::lit(x);
        weights[i] = T::lit(w);
        weights[n - 1 - i] = T::lit(w);
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    (nodes, weights)
}

/// Nodes and weights of a composite Gauss–Legendre rule with `panels` equal panels on `[a, b]`.
pub fn composite_gauss_nodes<T: Real>(a: T, b: T, panels: usize, order: usize) -> (Vec<T>, Vec<T>) {
    let (x, w) = gauss_legendre::<T>(order);
    let panels = panels.max(1);
    let width = (b - a) / T::from_usize_lossy(panels);
    let half = width * T::lit(0.5);
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let mid = a + width * (T::from_usize_lossy(p) + T::lit(0.5));
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(mid + half * *xi);
            weights.push(half * *wi);
        }
    }
    (nodes, weights)
}

const KRONROD_NODES: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const GAUSS7_WEIGHTS: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gauss_kronrod_15<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let c = (a + b) * T::lit(0.5);
    let h = (b - a) * T::lit(0.5);
    let fc = f(c);
    let mut k = fc * T::lit(KRONROD_WEIGHTS[7]);
    let mut g = fc * T::lit(GAUSS7_WEIGHTS[3]);
    for j in 0..7 {
        let dx = h * T::lit(KRONROD_NODES[j]);
        let s = f(c - dx) + f(c + dx);
        k += s * T::lit(KRONROD_WEIGHTS[j]);
        if j % 2 == 1 {
            g += s * T::lit(GAUSS7_WEIGHTS[j / 2]);
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Globally adaptive G7K15 integration of `f` on `[a, b]` to absolute tolerance `tol`.
///
/// Returns the estimate and the summed error estimate.
pub fn adaptive_gauss_kronrod<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, tol: T, max_intervals: usize) -> (T, T) {
    let mut pieces = vec![{
        let (v, e) = gauss_kronrod_15(&mut f, a, b);
        (a, b, v, e)
    }];
    loop {
        let err: T = pieces.iter().map(|p| p.3).sum();
        if err <= tol || pieces.len() >= max_intervals {
            let val = pieces.iter().map(|p| p.2).sum();
            return (val, err);
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .fold((0, T::zero()), |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best });
        let (lo, hi, _, _) = pieces.swap_remove(idx);
        let mid = (lo + hi) * T::lit(0.5);
        let (v1, e1) = gauss_kronrod_15(&mut f, lo, mid);
        let (v2, e2) = gauss_kronrod_15(&mut f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}

/// Composite Simpson weights for `n` (odd, at least 3) equispaced samples with spacing `dx`.
pub fn simpson_weights<T: Real>(n: usize, dx: T) -> Vec<T> {
    assert!(n >= 3 && n % 2 == 1, "Simpson needs an odd sample count >= 3");
    let third = dx / T::lit(3.0);
    (0..n)
        .map(|i| {
            if i == 0 || i == n - 1 {
                third
            } else if i % 2 == 1 {
                third * T::lit(4.0)
            } else {
                third * T::lit(2.0)
            }
        })
        .collect()
}

/// Composite Simpson integral of equispaced samples (odd length) with spacing `dx`.
pub fn simpson<T: Real>(samples: &[T], dx: T) -> T {
    simpson_weights(samples.len(), dx)
        .into_iter()
        .zip(samples)
        .map(|(w, s)| w * *s)
        .sum()
}

/// Composite Simpson weights on a strictly increasing grid of at least 3 points.
/// Pairs of intervals use the three-point rule for unequal steps; an odd final
/// interval uses the matching end correction.
pub fn simpson_weights_irregular<T: Real>(xs: &[T]) -> Vec<T> {
    let n = xs.len();
    assert!(n >= 3, "Simpson needs at least 3 samples");
    let h: Vec<T> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let m = h.len();
    let six = T::lit(6.0);
    let mut w = vec![T::zero(); n];
    let pairs = m / 2;
    for k in 0..pairs {
        let (h0, h1) = (h[2 * k], h[2 * k + 1]);
        let s = h0 + h1;
        w[2 * k] += s * (T::lit(2.0) * h0 - h1) / (six * h0);
        w[2 * k + 1] += s * s * s / (six * h0 * h1);
        w[2 * k + 2] += s * (T::lit(2.0) * h1 - h0) / (six * h1);
    }
    if m % 2 == 1 {
        // last interval from a quadratic through the final three points
        let (h0, h1) = (h[m - 2], h[m - 1]);
        let alpha = (T::lit(2.0) * h1 * h1 + T::lit(3.0) * h1 * h0) / (six * (h0 + h1));
        let beta = (h1 * h1 + T::lit(3.0) * h1 * h0) / (six * h0);
        let eta = h1 * h1 * h1 / (six * h0 * (h0 + h1));
        w[n - 1] += alpha;
        w[n - 2] += beta;
        w[n - 3] -= eta;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irregular_simpson_is_exact_for_quadratics() {
        for xs in [vec![0.0, 0.3, 0.5, 1.1, 1.2, 2.0], vec![0.1, 0.2, 0.45, 0.5, 0.9, 1.3, 1.4]] {
            let w = simpson_weights_irregular(&xs);
            let f = |x: f64| 1.0 + x - 2.0 * x * x;
            let fi = |x: f64| x + x * x / 2.0 - 2.0 * x.powi(3) / 3.0;
            let got: f64 = xs.iter().zip(&w).map(|(x, w)| w * f(*x)).sum();
            let want = fi(*xs.last().unwrap()) - fi(xs[0]);
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
        let xs: Vec<f64> = (0..=10).map(|i| i as f64 * 0.1).collect();
        let w = simpson_weights_irregular(&xs);
        let u = simpson_weights(11, 0.1);
        assert!(w.iter().zip(&u).all(|(a, b)| (a - b).abs() < 1e-15));
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in [1usize, 2, 5, 16, 31] {
            let (x, w) = gauss_legendre::<f64>(n);
            let wsum: f64 = w.iter().sum();
            assert!((wsum - 2.0).abs() < 1e-14, "n={n}");
            let deg = 2 * n - 2;
            let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
            let val: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            assert!((val - exact).abs() < 1e-13, "n={n} got {val}");
        }
    }

    #[test]
    fn kronrod_handles_oscillation() {
        let (v, e) = adaptive_gauss_kronrod(|x: f64| (20.0 * x).cos(), 0.0, 3.0, 1e-12, 1000);
        assert!((v - (60.0f64).sin() / 20.0).abs() < 1e-11);
        assert!(e < 1e-11);
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let n = 11;
        let dx = 0.1;
        let s: Vec<f64> = (0..n).map(|i| (i as f64 * dx).powi(3)).collect();
        assert!((simpson(&s, dx) - 0.25).abs() < 1e-14);
    }

    #[test]
    fn composite_gauss_covers_interval() {
        let (x, w) = composite_gauss_nodes::<f64>(-1.0, 4.0, 7, 8);
        let v: f64 = x.iter().zip(&w).map(|(a, b)| b * a.exp()).sum();
        assert!((v - (4.0f64.exp() - (-1.0f64).exp())).abs() < 1e-12);
    }
}
