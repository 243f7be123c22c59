//! Fast sup-norm scans of `|G(t, x, .)|` over the tangential variable.
//!
//! On a uniform radial grid with spacing `2 pi h / P`, the tangential integral
//! is a `P`-periodic trigonometric sum in `y`, evaluated on a whole window of
//! `y` by one inverse FFT. The window follows the wave packet, which moves along
//! `y = -t v` for group velocities `v` in `[v_min, v_max]` of the retained
//! modes. In `d = 2` the folded negative frequencies add the mirror image
//! `G_+(-y)`. In isotropic `d = 3` the radial Hankel transform is evaluated by
//! the order-zero Hankel expansion away from the axis and by the integral
//! `J0(z) = (2 pi)^{-1} int e^{iz cos theta} d theta` near it.

use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::bessel::hankel_coefficients;
use crate::error::{domain, Result};
use crate::model_modes::ModeBasis;
use crate::scalar::Real;

use super::config::{Propagator, SemiclassicalConfig};
use super::evaluate::propagate;
use super::truncation::{mode_truncation, ModeRange};

/// Retained weights are above this fraction of the largest one.
const WEIGHT_FLOOR: f64 = 1e-14;
/// Group velocities are collected over weights above this fraction.
const VELOCITY_FLOOR: f64 = 1e-10;
/// Tail allowance of the compactly supported cutoffs, in units of `h`.
const TAIL_MARGIN: f64 = 300.0;
/// Tangential sampling step, in units of `h`.
const SAMPLES_PER_H: f64 = 8.0;
/// Hankel expansion is used for `r >= AXIS_RADIUS h`.
const AXIS_RADIUS: f64 = 50.0;
const HANKEL_ORDERS: usize = 6;
/// Upper bound on memory for the per-`x` mode tables.
const TABLE_BUDGET_BYTES: usize = 768 << 20;
/// Times accumulated together against one pass over the mode tables.
const T_BATCH: usize = 4;
/// Tables sharing one pass over the phases.
const X_TILE: usize = 4;

#[derive(Debug, Clone)]
struct Block<T> {
    k: usize,
    j0: usize,
    omega: Vec<T>,
    weight: Vec<T>,
}

/// Supremum over the tangential window at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct SupSample<T> {
    pub t: T,
    pub sup: T,
    pub x_at: T,
    /// Tangential position of the maximum; the radius `|y|` in `d = 3`.
    pub y_at: T,
    /// `sup_y |G(t, x_i, y)|` for each `x_i` of the scanner's grid.
    pub per_x: Vec<T>,
}

/// Tangential profile `(y, G)` on the scanner's window; `y` is the radius in `d = 3`.
pub type Profile<T> = Vec<(T, Complex<T>)>;

/// Precomputed mode tables for repeated scans at a fixed configuration and `x` grid.
pub struct SupScanner<T: Real> {
    cfg: SemiclassicalConfig<T>,
    xs: Vec<T>,
    basis: ModeBasis<T>,
    range: ModeRange,
    rho: Vec<T>,
    /// FFT bin of the first node minus one: `rho[j] = (rho_bin + 1 + j) d_rho`.
    rho_bin: usize,
    blocks: Vec<Block<T>>,
    v_min: T,
    v_max: T,
    margin: T,
    period: T,
    dy: T,
    fft: Arc<dyn Fft<T>>,
    hankel: Vec<T>,
}

impl<T: Real> std::fmt::Debug for SupScanner<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SupScanner")
            .field("dim", &self.cfg.dim())
            .field("modes", &self.range)
            .field("radial_nodes", &self.rho.len())
            .field("fft_len", &self.fft.len())
            .field("velocity", &(self.v_min, self.v_max))
            .field("period", &self.period)
            .finish()
    }
}

impl<T: Real> SupScanner<T> {
    /// `xs` must be strictly increasing and nonnegative; scans accept `0 <= t <= cfg.t_max`.
    pub fn new(cfg: SemiclassicalConfig<T>, xs: Vec<T>) -> Result<Self> {
        cfg.validate()?;
        if cfg.dim() == 3 && !cfg.metric.is_isotropic() {
            return domain("tangential FFT scans need d = 2 or an isotropic metric; use GreenEvaluator");
        }
        if xs.is_empty() || xs.windows(2).any(|p| !(p[0] < p[1])) || xs[0] < T::zero() {
            return domain("x grid must be nonempty, nonnegative and strictly increasing");
        }
        let h = cfg.h;
        let x_hi = xs[xs.len() - 1].max(cfg.a);
        let range = mode_truncation(&cfg, x_hi);
        let basis = ModeBasis::new(range.k_max)?;
        let mu = cfg.metric.coeffs()[0];
        let (s_lo, s_hi) = (cfg.cutoff.s_min, cfg.cutoff.s_max);

        // A pilot grid fixes the velocity range and hence the period.
        let pilot_rho = Self::grid(s_lo, s_hi, h, T::lit(4.0)).0;
        let pilot = Self::weights(&cfg, &basis, range, &pilot_rho);
        let (v_min, v_max) = velocity_range(&pilot, &pilot_rho, &basis, mu, h);
        let margin = h * T::lit(TAIL_MARGIN) + T::lit(2.0) * (x_hi * (T::one() + x_hi)).sqrt();
        let r_axis = h * T::lit(AXIS_RADIUS);
        let mut period = (v_max - v_min) * cfg.t_max + margin * T::lit(2.0);
        if cfg.dim() == 3 {
            period = period.max((v_max / v_min) * (r_axis + margin) + margin + r_axis + margin);
        }
        let (rho, d_rho, rho_bin) = Self::grid(s_lo, s_hi, h, period);
        let period = T::TAU() * h / d_rho;
        let mut blocks = Self::weights(&cfg, &basis, range, &rho);
        let prefactor = d_rho / h.powi(cfg.dim() as i32 - 1);
        for b in &mut blocks {
            for w in &mut b.weight {
                *w *= prefactor;
            }
        }
        let n_fft = ((period / h * T::lit(SAMPLES_PER_H)).to_f64_lossy().ceil() as usize)
            .max(rho_bin + rho.len() + 2);
        let n_fft = next_fast_len(n_fft);
        let dy = period / T::from_usize_lossy(n_fft);
        let fft = FftPlanner::new().plan_fft_inverse(n_fft);
        let hankel = hankel_coefficients(HANKEL_ORDERS).into_iter().map(T::lit).collect();
        Ok(Self {
            cfg,
            xs,
            basis,
            range,
            rho,
            rho_bin,
            blocks,
            v_min,
            v_max,
            margin,
            period,
            dy,
            fft,
            hankel,
        })
    }

    /// Interior nodes `(j0 + i) d` of `(lo, hi)` with `lo = j0 d` and `d <= 2 pi h / period`,
    /// so that every node is an FFT bin. Returns the nodes, `d` and `j0`.
    fn grid(lo: T, hi: T, h: T, period: T) -> (Vec<T>, T, usize) {
        let target = T::TAU() * h / period;
        let j0 = (lo / target).ceil().to_usize().unwrap_or(1).max(1);
        let d = lo / T::from_usize_lossy(j0);
        let n = ((hi - lo) / d).ceil().to_usize().unwrap_or(1).max(2);
        let nodes = (1..n).map(|i| d * T::from_usize_lossy(j0 + i)).filter(|&r| r < hi).collect();
        (nodes, d, j0)
    }

    /// Per-mode contiguous blocks of `psi chi e_k(a)` and `sqrt(lambda)` on the grid.
    fn weights(cfg: &SemiclassicalConfig<T>, basis: &ModeBasis<T>, range: ModeRange, rho: &[T]) -> Vec<Block<T>> {
        let h = cfg.h;
        let mu = cfg.metric.coeffs()[0];
        let rows: Vec<(usize, Vec<T>, Vec<T>)> = (range.k_min..=range.k_max)
            .into_par_iter()
            .map(|k| {
                let mode = basis.mode(k);
                let mut om = Vec::with_capacity(rho.len());
                let mut wt = Vec::with_capacity(rho.len());
                for &s in rho {
                    let q = mu * s * s / (h * h);
                    let omega = mode.eigenvalue_q(s * s / (h * h), q).sqrt();
                    let chi = cfg.frequency_cutoff.map_or(T::one(), |c| c.eval(h * omega));
                    om.push(omega);
                    wt.push(cfg.cutoff.eval(s) * chi * mode.eval_q(cfg.a, q));
                }
                (k, om, wt)
            })
            .collect();
        let peak = rows
            .iter()
            .flat_map(|r| r.2.iter())
            .fold(T::zero(), |m, w| m.max(w.abs()));
        let floor = peak * T::lit(WEIGHT_FLOOR);
        rows.into_iter()
            .filter_map(|(k, om, wt)| {
                let first = wt.iter().position(|w| w.abs() > floor)?;
                let last = wt.iter().rposition(|w| w.abs() > floor)?;
                Some(Block {
                    k,
                    j0: first,
                    omega: om[first..=last].to_vec(),
                    weight: wt[first..=last].to_vec(),
                })
            })
            .collect()
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn config(&self) -> &SemiclassicalConfig<T> {
        &self.cfg
    }

    pub fn modes(&self) -> ModeRange {
        self.range
    }

    pub fn velocity_range(&self) -> (T, T) {
        (self.v_min, self.v_max)
    }

    pub fn radial_nodes(&self) -> usize {
        self.rho.len()
    }

    pub fn fft_len(&self) -> usize {
        self.fft.len()
    }

    /// Keeps only mode `k` (for single-mode scans).
    pub fn restrict_to_mode(&mut self, k: usize) -> Result<()> {
        if !self.range.contains(k) {
            return domain(format!("mode {k} outside the retained range {:?}", self.range));
        }
        self.blocks.retain(|b| b.k == k);
        if self.blocks.is_empty() {
            return domain(format!("mode {k} has no weight on the cutoff support"));
        }
        self.range = ModeRange { k_min: k, k_max: k };
        Ok(())
    }

    /// `e_k(x, rho/h)` for every block entry.
    fn mode_table(&self, x: T) -> Vec<Vec<T>> {
        let h = self.cfg.h;
        let mu = self.cfg.metric.coeffs()[0];
        self.blocks
            .iter()
            .map(|b| {
                let mode = self.basis.mode(b.k);
                (0..b.weight.len())
                    .map(|j| {
                        let s = self.rho[b.j0 + j];
                        mode.eval_q(x, mu * s * s / (h * h))
                    })
                    .collect()
            })
            .collect()
    }

    /// `sup_y |G|` at each time in `ts`.
    pub fn scan(&self, ts: &[T]) -> Result<Vec<SupSample<T>>> {
        for &t in ts {
            if !(t >= T::zero() && t <= self.cfg.t_max) {
                return domain(format!("t = {t} outside [0, t_max = {}]", self.cfg.t_max));
            }
        }
        let entries: usize = self.blocks.iter().map(|b| b.weight.len()).sum();
        let per_x = entries.max(1) * std::mem::size_of::<T>();
        let chunk = (TABLE_BUDGET_BYTES / per_x).clamp(1, self.xs.len());

        // sups[it][ix] = (value, y)
        let mut sups: Vec<Vec<(T, T)>> = vec![Vec::with_capacity(self.xs.len()); ts.len()];
        for xs in self.xs.chunks(chunk) {
            let tables: Vec<Vec<Vec<T>>> = xs.par_iter().map(|&x| self.mode_table(x)).collect();
            for (tb, out) in ts.chunks(T_BATCH).zip(sups.chunks_mut(T_BATCH)) {
                let spectra = self.spectra(tb, &tables);
                let rows: Vec<(T, T)> = spectra
                    .par_iter()
                    .enumerate()
                    .map(|(i, s)| self.sup_from_spectrum(tb[i % tb.len()], s))
                    .collect();
                // spectra are ordered x-major, time-minor
                for (i, r) in rows.into_iter().enumerate() {
                    out[i % tb.len()].push(r);
                }
            }
        }
        Ok(ts
            .iter()
            .zip(sups)
            .map(|(&t, row)| {
                let (mut best, mut bx, mut by) = (T::zero(), self.xs[0], T::zero());
                for (ix, &(v, y)) in row.iter().enumerate() {
                    if v > best {
                        best = v;
                        bx = self.xs[ix];
                        by = y;
                    }
                }
                SupSample {
                    t,
                    sup: best,
                    x_at: bx,
                    y_at: by,
                    per_x: row.iter().map(|p| p.0).collect(),
                }
            })
            .collect())
    }

    /// Full tangential profile of `G(t, x, .)` on the scan window.
    pub fn profile(&self, t: T, x: T) -> Result<Profile<T>> {
        if !(t >= T::zero() && t <= self.cfg.t_max) || !(x >= T::zero()) {
            return domain("profile point outside the scan domain");
        }
        let table = vec![self.mode_table(x)];
        let spectra = self.spectra(&[t], &table);
        Ok(self.profile_from_spectrum(t, &spectra[0]))
    }

    /// `S_j(x, t) = sum_k e^{it sqrt(lambda_kj)} w_kj e_k(x)` for each table and time,
    /// ordered x-major. Phases are shared by a tile of tables and each table
    /// entry by the whole batch of times, which keeps the loop out of memory.
    fn spectra(&self, ts: &[T], tables: &[Vec<Vec<T>>]) -> Vec<Vec<Complex<T>>> {
        let nb = ts.len();
        let nr = self.rho.len();
        // split real and imaginary parts so the inner loop vectorizes
        let phases: Vec<(Vec<T>, Vec<T>)> = self
            .blocks
            .par_iter()
            .map(|b| {
                let mut re = Vec::with_capacity(nb * b.omega.len());
                let mut im = Vec::with_capacity(nb * b.omega.len());
                for &t in ts {
                    for (om, w) in b.omega.iter().zip(&b.weight) {
                        let p = propagate(Propagator::Plus, t * *om) * *w;
                        re.push(p.re);
                        im.push(p.im);
                    }
                }
                (re, im)
            })
            .collect();
        let tiles: Vec<Vec<Complex<T>>> = tables
            .par_chunks(X_TILE)
            .map(|tile| {
                // acc[(ix * nb + it) * nr + j]
                let mut acc_re = vec![T::zero(); tile.len() * nb * nr];
                let mut acc_im = vec![T::zero(); tile.len() * nb * nr];
                for (ib, b) in self.blocks.iter().enumerate() {
                    let len = b.omega.len();
                    let (pr, pi) = &phases[ib];
                    for (ix, table) in tile.iter().enumerate() {
                        let e = &table[ib][..len];
                        for it in 0..nb {
                            let base = (ix * nb + it) * nr + b.j0;
                            let src_re = &pr[it * len..(it + 1) * len];
                            let src_im = &pi[it * len..(it + 1) * len];
                            let dst_re = &mut acc_re[base..base + len];
                            for j in 0..len {
                                dst_re[j] += src_re[j] * e[j];
                            }
                            let dst_im = &mut acc_im[base..base + len];
                            for j in 0..len {
                                dst_im[j] += src_im[j] * e[j];
                            }
                        }
                    }
                }
                acc_re.into_iter().zip(acc_im).map(|(re, im)| Complex::new(re, im)).collect()
            })
            .collect();
        tiles
            .into_iter()
            .flat_map(|acc| acc.chunks(nr).map(|c| c.to_vec()).collect::<Vec<_>>())
            .collect()
    }

    /// Inverse FFT of `amp_j S_j e^{i y0 rho_j/h}`; entry `m` is the sum at `y0 + m dy`.
    fn window(&self, spectrum: &[Complex<T>], amp: impl Fn(T) -> T, y0: T) -> Vec<Complex<T>> {
        let h = self.cfg.h;
        let n = self.fft.len();
        let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
        // rho_j is bin rho_bin + 1 + j, so m dy rho_j / h = 2 pi m (bin) / n exactly
        for (j, (s, &r)) in spectrum.iter().zip(&self.rho).enumerate() {
            buf[self.rho_bin + 1 + j] = *s * Complex::from_polar(amp(r), y0 * r / h);
        }
        self.fft.process(&mut buf);
        buf
    }

    /// Tangential significance range `[lo, hi]` of the one-sided packet (negative `y`).
    fn packet(&self, t: T) -> (T, T) {
        (-self.v_max * t - self.margin, -self.v_min * t + self.margin)
    }

    fn profile_from_spectrum(&self, t: T, spectrum: &[Complex<T>]) -> Profile<T> {
        let raw = if self.cfg.dim() == 2 {
            self.profile_2d(t, spectrum)
        } else {
            self.profile_3d(t, spectrum)
        };
        raw.into_iter()
            .map(|(y, g)| {
                let g = match self.cfg.propagator {
                    Propagator::Plus => g,
                    Propagator::Minus => g.conj(),
                    Propagator::Cosine => Complex::new(g.re, T::zero()),
                };
                (y, g)
            })
            .collect()
    }

    /// `(sup |G|, y at the sup)` without materializing the profile where possible.
    fn sup_from_spectrum(&self, t: T, s: &[Complex<T>]) -> (T, T) {
        if self.cfg.dim() != 2 || self.cfg.propagator == Propagator::Cosine {
            return sup_of(&self.profile_from_spectrum(t, s));
        }
        // conjugation does not change the modulus
        let n = self.fft.len();
        let (y0, direct, mirror) = self.windows_2d(t, s);
        let mut best = (T::zero(), 0usize);
        match &mirror {
            Some(mv) => {
                for m in 0..n {
                    let v = (direct[m] + mv[n - 1 - m]).norm_sqr();
                    if v > best.0 {
                        best = (v, m);
                    }
                }
            }
            None => {
                for (m, g) in direct.iter().enumerate() {
                    let v = g.norm_sqr();
                    if v > best.0 {
                        best = (v, m);
                    }
                }
            }
        }
        (best.0.sqrt(), y0 + self.dy * T::from_usize_lossy(best.1))
    }

    /// Window start, direct window and (while the packet overlaps its reflection) the mirror window.
    fn windows_2d(&self, t: T, s: &[Complex<T>]) -> (T, Vec<Complex<T>>, Option<Vec<Complex<T>>>) {
        let n = self.fft.len();
        let (lo, hi) = self.packet(t);
        let center = (lo + hi) * T::lit(0.5);
        let y0 = center - self.period * T::lit(0.5);
        let direct = self.window(s, |_| T::one(), y0);
        // the mirror term G_+(-y) matters only while the packet overlaps its reflection
        let mirror = if hi > -hi {
            let y0m = -(y0 + self.dy * T::from_usize_lossy(n - 1));
            Some(self.window(s, |_| T::one(), y0m))
        } else {
            None
        };
        (y0, direct, mirror)
    }

    fn profile_2d(&self, t: T, s: &[Complex<T>]) -> Profile<T> {
        let n = self.fft.len();
        let (y0, direct, mirror) = self.windows_2d(t, s);
        (0..n)
            .map(|m| {
                let y = y0 + self.dy * T::from_usize_lossy(m);
                let mut g = direct[m];
                if let Some(mv) = &mirror {
                    g += mv[n - 1 - m];
                }
                (y, g)
            })
            .collect()
    }

    fn profile_3d(&self, t: T, s: &[Complex<T>]) -> Profile<T> {
        let h = self.cfg.h;
        let n = self.fft.len();
        let r_axis = h * T::lit(AXIS_RADIUS);
        let (lo, hi) = self.packet(t);
        let mut out: Profile<T> = Vec::new();

        // Near the axis: G(r) = int_0^{2pi} F(r cos th) d th, F(y) = sum rho S e^{i y rho/h}
        if -hi < r_axis {
            let y0 = -self.period * T::lit(0.5);
            let f = self.window(s, |r| r, y0);
            let rho_c = self.cfg.cutoff.center();
            // demodulated samples are smooth enough for four-point interpolation
            let demod: Vec<Complex<T>> = (0..n)
                .map(|m| {
                    let y = y0 + self.dy * T::from_usize_lossy(m);
                    f[m] * Complex::from_polar(T::one(), -y * rho_c / h)
                })
                .collect();
            let sample = |y: T| -> Complex<T> {
                let u = (y - y0) / self.dy;
                let i = u.floor().to_usize().unwrap_or(1).clamp(1, n - 3);
                let p = u - T::from_usize_lossy(i);
                let c = lagrange4(p);
                let v = demod[i - 1] * c[0] + demod[i] * c[1] + demod[i + 1] * c[2] + demod[i + 2] * c[3];
                v * Complex::from_polar(T::one(), y * rho_c / h)
            };
            let s_max = self.cfg.cutoff.s_max;
            let mut r = T::zero();
            while r < r_axis {
                let n_th = (r * s_max / h).ceil().to_usize().unwrap_or(0) + 40;
                let dth = T::TAU() / T::from_usize_lossy(n_th);
                let mut acc = Complex::new(T::zero(), T::zero());
                for i in 0..n_th {
                    acc += sample(r * (dth * T::from_usize_lossy(i)).cos());
                }
                out.push((r, acc * dth));
                r += self.dy;
            }
        }

        // Hankel expansion: outgoing part in F_k(-r), incoming part in F_k(r)
        if -lo >= r_axis {
            let center = (lo + hi) * T::lit(0.5);
            let y0 = center - self.period * T::lit(0.5);
            let need_incoming = -lo > T::zero() && (self.margin - self.v_min * t) > r_axis;
            let y0m = -(y0 + self.dy * T::from_usize_lossy(n - 1));
            let mut outgoing = Vec::with_capacity(self.hankel.len());
            let mut incoming = Vec::with_capacity(self.hankel.len());
            for k in 0..self.hankel.len() {
                let e = T::lit(0.5) - T::from_usize_lossy(k);
                outgoing.push(self.window(s, |r| r.powf(e), y0));
                if need_incoming {
                    incoming.push(self.window(s, |r| r.powf(e), y0m));
                }
            }
            let rot = Complex::from_polar(T::one(), -T::FRAC_PI_4());
            for m in (0..n).rev() {
                let r = -(y0 + self.dy * T::from_usize_lossy(m));
                if r < r_axis {
                    continue;
                }
                let mut acc = Complex::new(T::zero(), T::zero());
                let mut pw = T::one();
                let mut ik = Complex::new(T::one(), T::zero());
                for k in 0..self.hankel.len() {
                    let c = self.hankel[k] * pw;
                    // H2 term: (-i)^k e^{i pi/4} F_k(-r); H1 term: i^k e^{-i pi/4} F_k(r)
                    acc += ik.conj() * rot.conj() * outgoing[k][m] * c;
                    if need_incoming {
                        acc += ik * rot * incoming[k][n - 1 - m] * c;
                    }
                    pw *= h / r;
                    ik *= Complex::new(T::zero(), T::one());
                }
                let pref = T::PI() * (T::lit(2.0) * h / (T::PI() * r)).sqrt();
                out.push((r, acc * pref));
            }
        }
        out
    }
}

/// Smallest `2^a 3^b 5^c >= n`; such lengths are as fast as powers of two
/// in the mixed-radix FFT and waste far less padding.
fn next_fast_len(n: usize) -> usize {
    let mut best = n.next_power_of_two();
    let mut p5 = 1;
    while p5 < best {
        let mut p35 = p5;
        while p35 < best {
            let mut m = p35;
            while m < n {
                m *= 2;
            }
            best = best.min(m);
            p35 *= 3;
        }
        p5 *= 5;
    }
    best
}

fn lagrange4<T: Real>(p: T) -> [T; 4] {
    let (a, b, c, d) = (p + T::one(), p, p - T::one(), p - T::lit(2.0));
    let six = T::lit(6.0);
    let two = T::lit(2.0);
    [-b * c * d / six, a * c * d / two, -a * b * d / two, a * b * c / six]
}

fn sup_of<T: Real>(profile: &Profile<T>) -> (T, T) {
    let best = profile
        .iter()
        .fold((T::zero(), T::zero()), |best, (y, g)| if g.norm_sqr() > best.0 { (g.norm_sqr(), *y) } else { best });
    (best.0.sqrt(), best.1)
}

/// `[v_min, v_max]` of `d sqrt(lambda)/d(|eta|/h)` over the significant weights.
fn velocity_range<T: Real>(blocks: &[Block<T>], rho: &[T], basis: &ModeBasis<T>, mu: T, h: T) -> (T, T) {
    let peak = blocks
        .iter()
        .flat_map(|b| b.weight.iter())
        .fold(T::zero(), |m, w| m.max(w.abs()));
    let floor = peak * T::lit(VELOCITY_FLOOR);
    let mu23 = mu.cbrt().powi(2);
    let (mut lo, mut hi) = (T::infinity(), T::zero());
    for b in blocks {
        let omega_k = basis.mode(b.k).omega;
        for (j, (w, om)) in b.weight.iter().zip(&b.omega).enumerate() {
            if w.abs() > floor {
                let e = rho[b.j0 + j] / h;
                // lambda = e^2 + omega mu^{2/3} e^{4/3}
                let v = (e + T::lit(2.0 / 3.0) * omega_k * mu23 * e.cbrt()) / *om;
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
    }
    if lo <= hi {
        (lo, hi)
    } else {
        (T::one(), T::one())
    }
}
