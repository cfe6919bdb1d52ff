//! Minimal SVG rendering for line plots and heatmaps.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 78.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 54.0;
const HEATMAP_CELLS: usize = 160;

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Line,
    Markers,
}

pub struct Series<'a> {
    pub label: &'a str,
    pub x: &'a [f64],
    pub y: &'a [f64],
    pub style: Style,
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= 1e-12 * lo.abs().max(1.0) {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

fn tick_label(v: f64, range: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if range < 1e-2 || range >= 1e4 {
        format!("{v:.2e}")
    } else if range < 1.0 {
        format!("{v:.3}")
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title));
}

fn axes(out: &mut String, frame: &Frame, x_label: &str, y_label: &str) {
    let (l, r, t, b) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
    let _ = writeln!(out, r#"<rect x="{l}" y="{t}" width="{}" height="{}" fill="none" stroke="black"/>"#, r - l, b - t);
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let xv = frame.x0 + f * (frame.x1 - frame.x0);
        let yv = frame.y0 + f * (frame.y1 - frame.y0);
        let (px, py) = (frame.px(xv), frame.py(yv));
        let _ = writeln!(out, r#"<line x1="{px:.1}" y1="{b}" x2="{px:.1}" y2="{}" stroke="black"/>"#, b + 5.0);
        let _ = writeln!(
            out,
            r#"<text x="{px:.1}" y="{}" text-anchor="middle">{}</text>"#,
            b + 18.0,
            tick_label(xv, frame.x1 - frame.x0)
        );
        let _ = writeln!(out, r#"<line x1="{}" y1="{py:.1}" x2="{l}" y2="{py:.1}" stroke="black"/>"#, l - 5.0);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#,
            l - 8.0,
            py + 4.0,
            tick_label(yv, frame.y1 - frame.y0)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (l + r) / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{0}" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>"#,
        (t + b) / 2.0,
        escape(y_label)
    );
}

pub fn line_plot(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (x0, x1) = span(series.iter().flat_map(|s| s.x.iter().copied()));
    let (y0, y1) = span(series.iter().flat_map(|s| s.y.iter().copied()));
    let pad = 0.05 * (y1 - y0);
    let frame = Frame { x0, x1, y0: y0 - pad, y1: y1 + pad };

    let mut out = String::new();
    open(&mut out, title);
    axes(&mut out, &frame, x_label, y_label);
    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let points = s.x.iter().zip(s.y).filter(|(x, y)| x.is_finite() && y.is_finite());
        match s.style {
            Style::Line => {
                let mut path = String::new();
                for (x, y) in points {
                    let _ = write!(path, "{:.2},{:.2} ", frame.px(*x), frame.py(*y));
                }
                let _ = writeln!(out, r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#, path.trim_end());
            }
            Style::Markers => {
                for (x, y) in points {
                    let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, frame.px(*x), frame.py(*y));
                }
            }
        }
    }
    if series.len() > 1 {
        for (k, s) in series.iter().enumerate() {
            let color = PALETTE[k % PALETTE.len()];
            let y = TOP + 16.0 + 16.0 * k as f64;
            let x = WIDTH - RIGHT - 150.0;
            let _ = writeln!(out, r#"<rect x="{x}" y="{}" width="14" height="4" fill="{color}"/>"#, y - 6.0);
            let _ = writeln!(out, r#"<text x="{}" y="{y}">{}</text>"#, x + 20.0, escape(s.label));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Linear blend through a short viridis-like ramp, `t ∈ [0, 1]`.
fn ramp(t: f64) -> String {
    const STOPS: [(f64, f64, f64); 5] =
        [(68.0, 1.0, 84.0), (59.0, 82.0, 139.0), (33.0, 145.0, 140.0), (94.0, 201.0, 98.0), (253.0, 231.0, 37.0)];
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let i = (t.floor() as usize).min(STOPS.len() - 2);
    let f = t - i as f64;
    let (a, b) = (STOPS[i], STOPS[i + 1]);
    let mix = |p: f64, q: f64| (p + f * (q - p)).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

/// Heatmap of `values` laid out row-major with `nx` rows along x and `ny`
/// columns along y. Large grids are decimated to at most 160 cells per axis.
#[allow(clippy::too_many_arguments)]
pub fn heatmap(
    title: &str,
    x_label: &str,
    y_label: &str,
    (x_start, x_step, nx): (f64, f64, usize),
    (y_start, y_step, ny): (f64, f64, usize),
    values: &[f64],
) -> String {
    assert_eq!(values.len(), nx * ny);
    let frame = Frame {
        x0: x_start - 0.5 * x_step,
        x1: x_start + (nx as f64 - 0.5) * x_step,
        y0: y_start - 0.5 * y_step,
        y1: y_start + (ny as f64 - 0.5) * y_step,
    };
    let (lo, hi) = span(values.iter().copied());
    let sx = nx.div_ceil(HEATMAP_CELLS);
    let sy = ny.div_ceil(HEATMAP_CELLS);

    let mut out = String::new();
    open(&mut out, title);
    for i in (0..nx).step_by(sx) {
        for j in (0..ny).step_by(sy) {
            let v = values[i * ny + j];
            let xa = frame.px(x_start + (i as f64 - 0.5) * x_step);
            let xb = frame.px(x_start + ((i + sx) as f64 - 0.5) * x_step).min(WIDTH - RIGHT);
            let ya = frame.py(y_start + ((j + sy) as f64 - 0.5) * y_step).max(TOP);
            let yb = frame.py(y_start + (j as f64 - 0.5) * y_step);
            let _ = writeln!(
                out,
                r#"<rect x="{xa:.2}" y="{ya:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                (xb - xa).max(0.0) + 0.3,
                (yb - ya).max(0.0) + 0.3,
                ramp((v - lo) / (hi - lo))
            );
        }
    }
    axes(&mut out, &frame, x_label, y_label);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_plot_is_well_formed() {
        let x = [0.0, 1.0, 2.0];
        let y = [0.0, 0.5, 0.25];
        let svg = line_plot("t", "x", "y<1", &[Series { label: "a", x: &x, y: &y, style: Style::Line }]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("<polyline"));
        assert!(svg.contains("y&lt;1"));
    }

    #[test]
    fn flat_series_does_not_divide_by_zero() {
        let x = [0.0, 1.0];
        let y = [0.5, 0.5];
        let svg = line_plot("t", "x", "y", &[Series { label: "a", x: &x, y: &y, style: Style::Markers }]);
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn heatmap_is_decimated() {
        let n = 401;
        let values = vec![1.0; n * n];
        let svg = heatmap("t", "x", "y", (0.0, 1.0, n), (0.0, 1.0, n), &values);
        let cells = svg.matches("<rect").count();
        assert!(cells <= 160 * 160 + 2, "{cells}");
    }

    #[test]
    fn ramp_endpoints() {
        assert_eq!(ramp(0.0), "#440154");
        assert_eq!(ramp(1.0), "#fde725");
    }
}
