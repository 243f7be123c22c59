//! Minimal self-rendered SVG line plots.

use std::fmt::Write;

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    pub color: &'static str,
    pub dashed: bool,
}

#[derive(Debug, Clone)]
pub struct Marker {
    pub x: f64,
    pub y: f64,
    pub label: String,
}

#[derive(Debug, Clone, Default)]
pub struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    pub series: Vec<Series>,
    /// Shaded `x` intervals.
    pub bands: Vec<(f64, f64)>,
    pub markers: Vec<Marker>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 70.0;
pub const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

impl LinePlot {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            ..Self::default()
        }
    }

    pub fn line(mut self, name: &str, points: Vec<(f64, f64)>, dashed: bool) -> Self {
        let color = PALETTE[self.series.len() % PALETTE.len()];
        self.series.push(Series {
            name: name.into(),
            points,
            color,
            dashed,
        });
        self
    }

    fn tx(&self, v: f64) -> f64 {
        if self.log_x {
            v.log10()
        } else {
            v
        }
    }

    fn ty(&self, v: f64) -> f64 {
        if self.log_y {
            v.log10()
        } else {
            v
        }
    }

    fn usable(&self, (x, y): (f64, f64)) -> bool {
        x.is_finite() && y.is_finite() && (!self.log_x || x > 0.0) && (!self.log_y || y > 0.0)
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in self.series.iter().flat_map(|s| s.points.iter()).filter(|p| self.usable(**p)) {
            let (x, y) = (self.tx(p.0), self.ty(p.1));
            b = (b.0.min(x), b.1.max(x), b.2.min(y), b.3.max(y));
        }
        if !b.0.is_finite() {
            return (0.0, 1.0, 0.0, 1.0);
        }
        let pad = |lo: f64, hi: f64| if hi > lo { (hi - lo) * 0.05 } else { 0.5 };
        let (px, py) = (pad(b.0, b.1), pad(b.2, b.3));
        (b.0 - px, b.1 + px, b.2 - py, b.3 + py)
    }

    pub fn to_svg(&self) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let sx = |x: f64| MARGIN + (self.tx(x) - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let sy = |y: f64| HEIGHT - MARGIN - (self.ty(y) - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for &(a, b) in &self.bands {
            let (ax, bx) = (sx(a).max(MARGIN), sx(b).min(WIDTH - MARGIN));
            if bx > ax {
                let _ = writeln!(
                    s,
                    r##"<rect x="{ax:.2}" y="{MARGIN}" width="{:.2}" height="{:.2}" fill="#f2e6c9"/>"##,
                    bx - ax,
                    HEIGHT - 2.0 * MARGIN
                );
            }
        }
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN}" y="{MARGIN}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
            WIDTH - 2.0 * MARGIN,
            HEIGHT - 2.0 * MARGIN
        );
        for i in 0..=4 {
            let f = i as f64 / 4.0;
            let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
            let (xt, yt) = (MARGIN + f * (WIDTH - 2.0 * MARGIN), HEIGHT - MARGIN - f * (HEIGHT - 2.0 * MARGIN));
            let lab = |v: f64, log: bool| if log { format!("{:.3e}", 10f64.powf(v)) } else { format!("{v:.4}") };
            let _ = writeln!(
                s,
                r#"<text x="{xt:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                HEIGHT - MARGIN + 18.0,
                lab(xv, self.log_x)
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{yt:.2}" text-anchor="end">{}</text>"#,
                MARGIN - 6.0,
                lab(yv, self.log_y)
            );
        }
        let _ = writeln!(s, r#"<text x="{:.2}" y="30" text-anchor="middle" font-size="15">{}</text>"#, WIDTH / 2.0, escape(&self.title));
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, WIDTH / 2.0, HEIGHT - 20.0, escape(&self.x_label));
        let _ = writeln!(
            s,
            r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(&self.y_label)
        );
        for (k, ser) in self.series.iter().enumerate() {
            let pts: Vec<String> = ser
                .points
                .iter()
                .filter(|p| self.usable(**p))
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let dash = if ser.dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
                ser.color,
                pts.join(" ")
            );
            let ly = MARGIN + 16.0 + 16.0 * k as f64;
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}"{dash}/><text x="{:.2}" y="{:.2}">{}</text>"#,
                WIDTH - MARGIN - 160.0,
                WIDTH - MARGIN - 135.0,
                ser.color,
                WIDTH - MARGIN - 130.0,
                ly + 4.0,
                escape(&ser.name)
            );
        }
        for m in self.markers.iter().filter(|m| self.usable((m.x, m.y))) {
            let (cx, cy) = (sx(m.x), sy(m.y));
            let _ = writeln!(
                s,
                r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="4" fill="black"/><text x="{:.2}" y="{:.2}">{}</text>"#,
                cx + 6.0,
                cy - 6.0,
                escape(&m.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_polylines_bands_and_markers() {
        let mut p = LinePlot::new("S <vs> B", "t", "sup")
            .line("S", vec![(0.1, 1.0), (0.2, 2.0), (0.3, 0.5)], false)
            .line("B", vec![(0.1, 3.0), (0.3, 3.0)], true);
        p.log_y = true;
        p.bands.push((0.15, 0.25));
        p.markers.push(Marker { x: 0.2, y: 2.0, label: "n=1".into() });
        let svg = p.to_svg();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("S &lt;vs&gt; B"));
        assert!(svg.contains("n=1"));
        assert!(svg.contains("#f2e6c9"));
    }

    #[test]
    fn degenerate_data_still_renders() {
        let svg = LinePlot::new("empty", "x", "y").line("none", vec![(1.0, f64::NAN)], false).to_svg();
        assert!(svg.contains("<polyline"));
    }
}
