//! Static SVG scatter plots of transformation outputs.
//!
//! Output depends only on the input values, so identical inputs give
//! byte-identical files.

use std::fmt::Write;

use morsepeak::{PdSet, PtSet, RptSet};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 56.0;

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    /// Bounds over the finite values, padded so no mark sits on an edge.
    fn fit(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        Frame { x: bounds(xs), y: bounds(ys) }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - 2.0 * MARGIN)
    }

    /// Maps `+inf` to the top edge and `-inf` to the bottom edge.
    fn py(&self, y: f64) -> f64 {
        let top = MARGIN * 0.5;
        let bottom = HEIGHT - MARGIN * 0.5;
        if y == f64::INFINITY {
            return top;
        }
        if y == f64::NEG_INFINITY {
            return bottom;
        }
        HEIGHT - MARGIN - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo > hi {
        return (0.0, 1.0);
    }
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 0.5 };
    (lo - pad, hi + pad)
}

fn header(out: &mut String, title: &str, frame: &Frame, xlabel: &str, ylabel: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="18" text-anchor="middle" font-size="14">{title}</text>"#, WIDTH / 2.0);
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r##"<path d="M{x0} {y1}H{x1}M{x0} {y1}V{y0}" stroke="#333" fill="none"/>"##
    );
    let _ = writeln!(out, r#"<text x="{x0}" y="{}" text-anchor="middle">{:.3}</text>"#, y1 + 16.0, frame.x.0);
    let _ = writeln!(out, r#"<text x="{x1}" y="{}" text-anchor="middle">{:.3}</text>"#, y1 + 16.0, frame.x.1);
    let _ = writeln!(out, r#"<text x="{}" y="{y1}" text-anchor="end">{:.3}</text>"#, x0 - 4.0, frame.y.0);
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{:.3}</text>"#, x0 - 4.0, y0 + 4.0, frame.y.1);
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{xlabel}</text>"#, WIDTH / 2.0, HEIGHT - 8.0);
    let _ = writeln!(
        out,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{ylabel}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
}

fn circle(out: &mut String, cx: f64, cy: f64, fill: &str, extra: &str) {
    let _ = writeln!(out, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="4" fill="{fill}"{extra}/>"#);
}

/// Grey level for a death value: low deaths dark, high deaths light.
fn shade(death: f64, range: (f64, f64)) -> String {
    let t = if death.is_finite() && range.1 > range.0 { (death - range.0) / (range.1 - range.0) } else { 0.0 };
    let level = (t.clamp(0.0, 1.0) * 200.0).round() as u8;
    format!("rgb({level},{level},{level})")
}

/// Position against birth, with death encoded by grey level; diagonal points
/// (minima) in blue; essential features ringed in red.
pub fn pt_svg(pt: &PtSet) -> String {
    let all = pt.features.iter().chain(&pt.diagonal);
    let frame = Frame::fit(all.clone().map(|f| f.x), all.map(|f| f.birth));
    let deaths = bounds(pt.features.iter().map(|f| f.death));
    let mut out = String::new();
    header(&mut out, "persistence transformation", &frame, "x", "birth");
    for d in &pt.diagonal {
        circle(&mut out, frame.px(d.x), frame.py(d.birth), "#3b6fd6", r#" fill-opacity="0.6""#);
    }
    for f in &pt.features {
        let extra = if f.is_essential() { r##" stroke="#c0392b" stroke-width="2""## } else { "" };
        circle(&mut out, frame.px(f.x), frame.py(f.birth), &shade(f.death, deaths), extra);
    }
    out.push_str("</svg>\n");
    out
}

/// Position against persistence; essential features sit on the top edge.
pub fn rpt_svg(rpt: &RptSet) -> String {
    let frame = Frame::fit(
        rpt.features.iter().map(|f| f.x),
        rpt.features.iter().map(|f| f.persistence).chain([0.0]),
    );
    let mut out = String::new();
    header(&mut out, "reduced persistence transformation", &frame, "x", "persistence");
    for f in &rpt.features {
        let (x, y) = (frame.px(f.x), frame.py(f.persistence));
        let _ = writeln!(
            out,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{y:.2}" stroke="#c0392b"/>"##,
            frame.py(0.0)
        );
        circle(&mut out, x, y, "#c0392b", "");
    }
    out.push_str("</svg>\n");
    out
}

/// Birth against death with the diagonal drawn; `death = -inf` sits on the
/// bottom edge.
pub fn pd_svg(pd: &PdSet) -> String {
    let vals = pd.points.iter().flat_map(|p| [p.birth, p.death]);
    let frame = Frame::fit(vals.clone(), vals);
    let mut out = String::new();
    header(&mut out, "persistence diagram", &frame, "birth", "death");
    let lo = frame.x.0.max(frame.y.0);
    let hi = frame.x.1.min(frame.y.1);
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-dasharray="4 3"/>"##,
        frame.px(lo),
        frame.py(lo),
        frame.px(hi),
        frame.py(hi)
    );
    for p in &pd.points {
        circle(&mut out, frame.px(p.birth), frame.py(p.death), "#222", "");
    }
    out.push_str("</svg>\n");
    out
}
