use gallery::green_sum::*;
use gallery::model_modes::ModelMetric;
use gallery::quadrature::composite_gauss_nodes;
use num_complex::Complex;

fn cfg(h: f64, a: f64, dim: usize) -> SemiclassicalConfig<f64> {
    let mut c = SemiclassicalConfig::new(h, a, dim).unwrap();
    c.t_max = 3.0;
    c
}

#[test]
fn mode_sum_matches_single_modes() {
    let c = cfg(2f64.powi(-5), 0.3, 2);
    let ev = GreenEvaluator::new(c, 0.6).unwrap();
    let (t, x, y) = (0.4, 0.3, [-0.35]);
    let total = ev.evaluate(t, x, &y).unwrap().value;
    let r = ev.modes();
    let parts: Complex<f64> = (r.k_min..=r.k_max).map(|k| ev.single_mode(k, t, x, &y).unwrap().value).sum();
    assert!((total - parts).norm() < 2e-3 * total.norm(), "{total} vs {parts}");
}

#[test]
fn doubling_density_is_a_convergence_certificate() {
    let mut c = cfg(2f64.powi(-6), 0.25, 2);
    let base = GreenEvaluator::new(c.clone(), 0.5).unwrap();
    c.quad_density *= 2.0;
    let fine = GreenEvaluator::new(c, 0.5).unwrap();
    for (t, x, y) in [(0.0, 0.25, 0.0), (0.5, 0.2, -0.5), (1.2, 0.3, -1.3)] {
        let a = base.evaluate(t, x, &[y]).unwrap().value;
        let b = fine.evaluate(t, x, &[y]).unwrap().value;
        assert!((a - b).norm() < 1e-3 * b.norm(), "t {t}: {a} vs {b}");
    }
}

#[test]
fn dirichlet_boundary() {
    let c = cfg(2f64.powi(-6), 0.25, 2);
    let ev = GreenEvaluator::new(c.clone(), 0.5).unwrap();
    let peak = ev.evaluate(0.0, 0.25, &[0.0]).unwrap().value.norm();
    for (t, y) in [(0.0, 0.0), (0.3, -0.3), (1.0, -1.1), (2.0, -2.2)] {
        let v = ev.evaluate(t, 0.0, &[y]).unwrap().value.norm();
        assert!(v < 1e-6 * peak, "t {t}: {v}");
    }
}

#[test]
fn source_and_receiver_depths_commute() {
    let h = 2f64.powi(-6);
    let a = 0.25;
    let x = 0.32;
    let ev_a = GreenEvaluator::new(cfg(h, a, 2), 0.64).unwrap();
    let ev_x = GreenEvaluator::new(cfg(h, x, 2), 0.64).unwrap();
    for (t, y) in [(0.2, -0.2), (0.9, -1.0)] {
        let g1 = ev_a.evaluate(t, x, &[y]).unwrap().value.norm();
        let g2 = ev_x.evaluate(t, a, &[y]).unwrap().value.norm();
        assert!((g1 - g2).abs() < 2e-3 * g1.max(g2), "t {t}: {g1} vs {g2}");
    }
}

#[test]
fn isotropic_three_dimensional_rotation_invariance() {
    let ev = GreenEvaluator::new(cfg(2f64.powi(-5), 0.3, 3), 0.6).unwrap();
    let r = 0.45;
    let vals: Vec<f64> = (0..4)
        .map(|i| {
            let th = 0.4 + i as f64 * std::f64::consts::FRAC_PI_2 * 0.77;
            ev.evaluate(0.4, 0.3, &[r * th.cos(), r * th.sin()]).unwrap().value.norm()
        })
        .collect();
    for v in &vals {
        assert!((v - vals[0]).abs() < 1e-6 * vals[0]);
    }
}

#[test]
fn anisotropic_polar_grid_reduces_to_isotropic() {
    // a diagonal metric with equal entries, written with a tiny off-diagonal term, takes the polar path
    let h = 2f64.powi(-4);
    let iso = cfg(h, 0.4, 3);
    let polar = iso.clone().with_metric(ModelMetric::new(3, vec![1.0, 1e-13, 1e-13, 1.0]).unwrap()).unwrap();
    let a = GreenEvaluator::new(iso, 0.8).unwrap().evaluate(0.2, 0.4, &[0.1, -0.15]).unwrap().value;
    let b = GreenEvaluator::new(polar, 0.8).unwrap().evaluate(0.2, 0.4, &[0.1, -0.15]).unwrap().value;
    assert!((a - b).norm() < 2e-3 * a.norm(), "{a} vs {b}");
}

#[test]
fn initial_datum_pairs_like_the_truncated_dirac_mass() {
    // int g(x) G(0, x, 0) dx against h^{-1} int 2 psi sum_k chi e_k(a) <g, e_k> d eta
    let h = 2f64.powi(-5);
    let a = 0.3;
    let c = cfg(h, a, 2);
    let ev = GreenEvaluator::new(c.clone(), 1.0).unwrap();
    let g = |x: f64| (-((x - a) / 0.05).powi(2)).exp();
    let (xs, ws) = composite_gauss_nodes(0.0, 0.7, 70, 8);
    let lhs: f64 = xs.iter().zip(&ws).map(|(&x, w)| w * g(x) * ev.evaluate(0.0, x, &[0.0]).unwrap().value.re).sum();

    let basis = ev.basis();
    let r = ev.modes();
    let chi = c.frequency_cutoff.unwrap();
    let n = 600;
    let ds = (c.cutoff.s_max - c.cutoff.s_min) / n as f64;
    let mut rhs = 0.0;
    for i in 1..n {
        let s = c.cutoff.s_min + ds * i as f64;
        let q = s * s / (h * h);
        let mut acc = 0.0;
        for mode in &basis.modes()[r.k_min - 1..r.k_max] {
            let lam = mode.eigenvalue_q(q, q);
            let weight = chi.eval(h * lam.sqrt());
            if weight == 0.0 {
                continue;
            }
            let proj: f64 = xs.iter().zip(&ws).map(|(&x, w)| w * g(x) * mode.eval_q(x, q)).sum();
            acc += weight * mode.eval_q(a, q) * proj;
        }
        rhs += 2.0 * c.cutoff.eval(s) * acc * ds / h;
    }
    assert!((lhs - rhs).abs() < 1e-2 * rhs.abs(), "{lhs} vs {rhs}");
}

#[test]
fn scanner_agrees_with_direct_quadrature() {
    for dim in [2usize, 3] {
        let c = cfg(2f64.powi(-6), 0.25, dim);
        let sc = SupScanner::new(c.clone(), vec![0.15, 0.25, 0.4]).unwrap();
        let ev = GreenEvaluator::new(c, 0.5).unwrap();
        for (t, x) in [(0.05, 0.25), (0.6, 0.15), (2.5, 0.4)] {
            let p = sc.profile(t, x).unwrap();
            let (im, peak) = p
                .iter()
                .enumerate()
                .fold((0, 0.0), |b, (i, (_, g))| if g.norm() > b.1 { (i, g.norm()) } else { b });
            for idx in [im, (im + 13) % p.len(), (im + p.len() / 3) % p.len()] {
                let (y, g) = p[idx];
                let yv = if dim == 2 { vec![y] } else { vec![0.6 * y, -0.8 * y] };
                let d = ev.evaluate(t, x, &yv).unwrap().value;
                assert!((g - d).norm() < 1e-6 * peak, "d {dim} t {t} x {x} y {y}: {g} vs {d}");
            }
        }
    }
}

#[test]
fn propagator_variants_share_the_modulus_structure() {
    let mut c = cfg(2f64.powi(-6), 0.25, 2);
    let plus = GreenEvaluator::new(c.clone(), 0.5).unwrap().evaluate(0.7, 0.25, &[-0.6]).unwrap().value;
    c.propagator = Propagator::Minus;
    let minus = GreenEvaluator::new(c.clone(), 0.5).unwrap().evaluate(0.7, 0.25, &[-0.6]).unwrap().value;
    c.propagator = Propagator::Cosine;
    let cosine = GreenEvaluator::new(c, 0.5).unwrap().evaluate(0.7, 0.25, &[-0.6]).unwrap().value;
    assert!((plus.conj() - minus).norm() < 1e-3 * plus.norm());
    assert!((cosine.re - plus.re).abs() < 1e-3 * plus.norm() && cosine.im == 0.0);
}

#[test]
fn field_slice_csv_has_header_and_rows() {
    let c = cfg(2f64.powi(-5), 0.3, 2);
    let header = c.header_pairs();
    let ev = GreenEvaluator::new(c, 0.6).unwrap();
    let slice = FieldSlice::compute(&ev, 0.25, vec![0.2, 0.3], vec![vec![-0.2], vec![-0.3], vec![0.0]]).unwrap();
    let mut buf = Vec::new();
    slice.write_csv(&mut buf, &header).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("# h=0.03125\n# a=0.3\n"));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "t,x,y1,re,im,abs");
    assert_eq!(rows.len(), 1 + 6);
    assert!(slice.sup_norm() > 0.0);
    assert!(FieldSlice::compute(&ev, 0.25, vec![0.3, 0.2], vec![vec![0.0]]).is_err());
}

#[test]
fn evaluator_rejects_bad_points() {
    let ev = GreenEvaluator::new(cfg(2f64.powi(-5), 0.3, 2), 0.6).unwrap();
    assert!(ev.evaluate(5.0, 0.3, &[0.0]).is_err());
    assert!(ev.evaluate(0.1, -0.01, &[0.0]).is_err());
    assert!(ev.evaluate(0.1, 0.3, &[0.0, 1.0]).is_err());
}
