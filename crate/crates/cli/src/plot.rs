//! Static SVG step plot of a rank profile.

use std::fmt::Write as _;

use caloron_core::format::sig_digits;
use caloron_core::nahm::Segment;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 48.0;

/// Step function `t ↦ rank` over the given segments.
pub fn step_plot_svg(segments: &[Segment], title: &str) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    if segments.is_empty() {
        svg.push_str("</svg>\n");
        return svg;
    }
    let t0 = segments.first().unwrap().t_lo;
    let t1 = segments.last().unwrap().t_hi;
    let lo = segments.iter().map(|s| s.rank).min().unwrap().min(0);
    let hi = segments.iter().map(|s| s.rank).max().unwrap().max(lo + 1);
    let x = |t: f64| MARGIN + (t - t0) / (t1 - t0).max(f64::MIN_POSITIVE) * (WIDTH - 2.0 * MARGIN);
    let y = |r: i64| HEIGHT - MARGIN - (r - lo) as f64 / (hi - lo) as f64 * (HEIGHT - 2.0 * MARGIN);

    // axes and rank ticks
    let _ = writeln!(
        svg,
        r#"<path d="M{m} {m} V{b} H{r}" stroke="black" fill="none"/>"#,
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    for r in lo..=hi {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{r}</text>"#,
            MARGIN - 6.0,
            y(r) + 4.0
        );
    }
    for t in [t0, t1] {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            x(t),
            HEIGHT - MARGIN + 16.0,
            sig_digits(t, 4)
        );
    }

    let mut path = String::new();
    for (i, s) in segments.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(path, "{cmd}{:.2} {:.2} L{:.2} {:.2} ", x(s.t_lo), y(s.rank), x(s.t_hi), y(s.rank));
    }
    let _ = writeln!(
        svg,
        r##"<path d="{}" stroke="#1f4e9c" stroke-width="2" fill="none"/>"##,
        path.trim_end()
    );
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
