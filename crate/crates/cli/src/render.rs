//! Text renderings: TSV tables and SVG plots of diagrams.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use persdgm::diagram::DiagramGrid;
use persdgm::exact::{format_rational, Rational};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 56.0;
/// Height of the band above the plot holding points that never die.
const INF_BAND: f64 = 36.0;

fn end_text(end: &Option<Rational>) -> String {
    end.as_ref()
        .map_or_else(|| "inf".to_string(), format_rational)
}

/// One `start, end, label` row per nonzero cell.
pub fn diagram_tsv(y: &DiagramGrid) -> String {
    let mut out = String::from("start\tend\tlabel\n");
    for (iv, v) in y.support() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}",
            format_rational(&iv.start),
            end_text(&iv.end),
            v
        );
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Birth on the horizontal axis, death on the vertical one; cells ending at
/// `∞` sit on a dashed row above the plot. Negative labels get hollow marks.
pub fn diagram_svg(y: &DiagramGrid, title: &str) -> String {
    let values: Vec<f64> = y.grid().iter().map(|x| x.to_f64().unwrap_or(0.0)).collect();
    let (lo, hi) = match (values.first(), values.last()) {
        (Some(&a), Some(&b)) if b > a => (a, b),
        (Some(&a), _) => (a - 1.0, a + 1.0),
        _ => (0.0, 1.0),
    };
    let pad = (hi - lo) * 0.1;
    let (lo, hi) = (lo - pad, hi + pad);
    let plot_top = MARGIN + INF_BAND;
    let plot_bottom = SIZE - MARGIN;
    let span = plot_bottom - plot_top;
    let px = |v: f64| MARGIN + (v - lo) / (hi - lo) * (SIZE - 2.0 * MARGIN);
    let py = |v: f64| plot_bottom - (v - lo) / (hi - lo) * span;
    let inf_y = MARGIN + INF_BAND / 2.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="{:.2}" font-size="13">{}</text>"#,
        MARGIN / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r##"<line x1="{MARGIN:.2}" y1="{plot_bottom:.2}" x2="{:.2}" y2="{plot_bottom:.2}" stroke="#444"/>"##,
        SIZE - MARGIN
    );
    let _ = writeln!(
        s,
        r##"<line x1="{MARGIN:.2}" y1="{plot_bottom:.2}" x2="{MARGIN:.2}" y2="{plot_top:.2}" stroke="#444"/>"##
    );
    let _ = writeln!(
        s,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999"/>"##,
        px(lo),
        py(lo),
        px(hi),
        py(hi)
    );
    let _ = writeln!(
        s,
        r##"<line x1="{MARGIN:.2}" y1="{inf_y:.2}" x2="{:.2}" y2="{inf_y:.2}" stroke="#999" stroke-dasharray="4 3"/>"##,
        SIZE - MARGIN
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}">∞</text>"#,
        MARGIN - 16.0,
        inf_y + 4.0
    );
    for (x, v) in y.grid().iter().zip(&values) {
        let label = escape(&format_rational(x));
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            px(*v),
            plot_bottom + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"#,
            MARGIN - 6.0,
            py(*v) + 4.0
        );
    }
    for (iv, v) in y.support() {
        let x = px(iv.start.to_f64().unwrap_or(0.0));
        let yy = iv
            .end
            .as_ref()
            .map_or(inf_y, |e| py(e.to_f64().unwrap_or(0.0)));
        let negative = v.iter().any(|(_, c)| *c < 0);
        let fill = if negative { "white" } else { "#1f5fa8" };
        let _ = writeln!(
            s,
            r##"<circle cx="{x:.2}" cy="{yy:.2}" r="4" fill="{fill}" stroke="#1f5fa8" stroke-width="1.5"/>"##
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            x + 7.0,
            yy - 6.0,
            escape(&v.to_string())
        );
    }
    s.push_str("</svg>\n");
    s
}
