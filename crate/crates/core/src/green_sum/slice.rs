use std::io::Write;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::scalar::Real;

use super::evaluate::GreenEvaluator;
use super::truncation::ModeRange;

/// `u(t, x, y)` on a tensor grid of `x` values and tangential points `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSlice<T> {
    pub t: T,
    pub xs: Vec<T>,
    /// Tangential sample points, each of length `d - 1`.
    pub ys: Vec<Vec<T>>,
    /// Row-major over `(x, y)`.
    pub values: Vec<Complex<T>>,
    pub modes: ModeRange,
    /// Largest radial node count used by any sample.
    pub radial_nodes: usize,
}

impl<T: Real> FieldSlice<T> {
    /// Evaluates every grid point; rows are filled in a fixed order regardless of scheduling.
    pub fn compute(eval: &GreenEvaluator<T>, t: T, xs: Vec<T>, ys: Vec<Vec<T>>) -> Result<Self> {
        if xs.is_empty() || ys.is_empty() {
            return domain("field slice needs at least one x and one y");
        }
        if xs.windows(2).any(|p| !(p[0] < p[1])) {
            return domain("x grid must be strictly increasing");
        }
        let points: Vec<(usize, usize)> = (0..xs.len()).flat_map(|i| (0..ys.len()).map(move |j| (i, j))).collect();
        let evals = points
            .par_iter()
            .map(|&(i, j)| eval.evaluate(t, xs[i], &ys[j]))
            .collect::<Result<Vec<_>>>()?;
        let radial_nodes = evals.iter().map(|e| e.radial_nodes).max().unwrap_or(0);
        let values: Vec<Complex<T>> = evals.iter().map(|e| e.value).collect();
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return domain("non-finite field value");
        }
        Ok(Self {
            t,
            xs,
            ys,
            values,
            modes: eval.modes(),
            radial_nodes,
        })
    }

    pub fn value(&self, ix: usize, iy: usize) -> Complex<T> {
        self.values[ix * self.ys.len() + iy]
    }

    pub fn sup_norm(&self) -> T {
        self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    /// CSV with a `# key=value` header, then `t,x,y1[,y2],re,im,abs` rows.
    pub fn write_csv<W: Write>(&self, mut out: W, header: &[(String, String)]) -> std::io::Result<()> {
        for (k, v) in header {
            writeln!(out, "# {k}={v}")?;
        }
        writeln!(out, "# k_min={}", self.modes.k_min)?;
        writeln!(out, "# k_max={}", self.modes.k_max)?;
        writeln!(out, "# radial_nodes={}", self.radial_nodes)?;
        let dims = self.ys[0].len();
        let ycols: Vec<String> = (1..=dims).map(|i| format!("y{i}")).collect();
        writeln!(out, "t,x,{},re,im,abs", ycols.join(","))?;
        for (ix, x) in self.xs.iter().enumerate() {
            for (iy, y) in self.ys.iter().enumerate() {
                let v = self.value(ix, iy);
                let ys: Vec<String> = y.iter().map(|c| format!("{c:.10e}")).collect();
                writeln!(
                    out,
                    "{:.10e},{:.10e},{},{:.10e},{:.10e},{:.10e}",
                    self.t,
                    x,
                    ys.join(","),
                    v.re,
                    v.im,
                    v.norm()
                )?;
            }
        }
        Ok(())
    }
}
