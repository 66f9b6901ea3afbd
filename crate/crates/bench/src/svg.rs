//! Bare-bones SVG line plots.

use std::fmt::Write as _;

const W: f64 = 900.0;
const H: f64 = 300.0;
const PAD: f64 = 40.0;
const COLORS: [&str; 4] = ["#222222", "#d62728", "#1f77b4", "#2ca02c"];

pub struct Series<'a> {
    pub name: &'a str,
    pub y: &'a [f64],
}

/// One polyline per series over the shared `x` axis, with a legend and the
/// axis ranges printed in the corners.
pub fn line_plot(title: &str, x: &[f64], series: &[Series<'_>]) -> String {
    let (x0, x1) = range(x);
    let (y0, y1) = series
        .iter()
        .map(|s| range(s.y))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |a, b| {
            (a.0.min(b.0), a.1.max(b.1))
        });
    let sx = |v: f64| PAD + (v - x0) / span(x0, x1) * (W - 2.0 * PAD);
    let sy = |v: f64| H - PAD - (v - y0) / span(y0, y1) * (H - 2.0 * PAD);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{PAD}" y="20" font-size="13">{}</text>"#,
        escape(title)
    );
    let _ = writeln!(
        out,
        r##"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="#999"/>"##,
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut pts = String::new();
        for (xv, yv) in x.iter().zip(s.y) {
            let _ = write!(pts, "{:.2},{:.2} ", sx(*xv), sy(*yv));
        }
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="0.8" points="{}"/>"#,
            pts.trim_end()
        );
        let ly = PAD + 14.0 * (i as f64 + 1.0);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{ly}" fill="{color}">{}</text>"#,
            W - PAD - 110.0,
            escape(s.name)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{PAD}" y="{}">{x0:.3}</text>"#,
        H - PAD + 15.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="end">{x1:.3}</text>"#,
        W - PAD,
        H - PAD + 15.0
    );
    let _ = writeln!(out, r#"<text x="4" y="{}">{y1:.3}</text>"#, PAD + 4.0);
    let _ = writeln!(out, r#"<text x="4" y="{}">{y0:.3}</text>"#, H - PAD);
    out.push_str("</svg>\n");
    out
}

fn range(v: &[f64]) -> (f64, f64) {
    v.iter()
        .filter(|x| x.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

fn span(lo: f64, hi: f64) -> f64 {
    if hi > lo {
        hi - lo
    } else {
        1.0
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
