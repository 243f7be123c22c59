//! CSV and SVG output of dispersion envelopes.

use std::io::{self, Write};

use crate::plot::{LinePlot, Marker};
use crate::scalar::Real;

use super::envelope::DispersionEnvelope;

/// `# key=value` header lines followed by `t,S,B_regime,B_refined,regime_label,n_interval`.
pub fn write_envelope_csv<T: Real, W: Write>(
    env: &DispersionEnvelope<T>,
    w: &mut W,
    header: &[(String, String)],
) -> io::Result<()> {
    for (k, v) in header {
        writeln!(w, "# {k}={v}")?;
    }
    writeln!(w, "t,S,B_regime,B_refined,regime_label,n_interval")?;
    for i in 0..env.len() {
        writeln!(
            w,
            "{:.10e},{:.10e},{:.10e},{:.10e},{},{}",
            env.ts[i],
            env.sup[i],
            env.bound[i].envelope,
            env.refined[i],
            env.bound[i].regime,
            env.interval[i].unwrap_or(0)
        )?;
    }
    Ok(())
}

/// `S`, the regime bound and the refined bound scaled by `C_fit`, with `I_n` shaded and peaks marked.
pub fn envelope_plot<T: Real>(env: &DispersionEnvelope<T>) -> LinePlot {
    let f = |v: T| v.to_f64_lossy();
    let c = f(env.upper_constant());
    let pts = |vals: &[T], scale: f64| -> Vec<(f64, f64)> {
        env.ts.iter().zip(vals).map(|(t, v)| (f(*t), f(*v) * scale)).collect()
    };
    let bounds: Vec<T> = env.bound.iter().map(|b| b.envelope).collect();
    let mut plot = LinePlot::new(
        &format!("sup-norm envelope, d={}, h={:.3e}, a={}", env.dim, f(env.h), f(env.a)),
        "t",
        "sup |G|",
    )
    .line("S(t)", pts(&env.sup, 1.0), false)
    .line("C_fit B(t)", pts(&bounds, c), true)
    .line("C_fit B_refined(t)", pts(&env.refined, c), true);
    plot.log_y = true;
    plot.bands = env.schedule.intervals.iter().map(|i| (f(i.lo), f(i.hi))).collect();
    plot.markers = env
        .peaks
        .iter()
        .map(|p| Marker {
            x: f(p.t),
            y: f(p.sup),
            label: p.n.map_or("peak".into(), |n| format!("n={n}")),
        })
        .collect();
    plot
}
