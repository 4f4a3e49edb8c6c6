//! Static SVG line chart of bench timings.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 55.0;

/// Seconds against ambient dimension, one polyline through `(n, seconds)`.
pub fn timing_svg(points: &[(usize, f64)]) -> String {
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let n_min = points.iter().map(|p| p.0).min().unwrap_or(0) as f64;
    let n_max = points.iter().map(|p| p.0).max().unwrap_or(1) as f64;
    let n_span = (n_max - n_min).max(1.0);
    let t_max = points.iter().map(|p| p.1).fold(0.0, f64::max);
    let t_max = if t_max > 0.0 { t_max * 1.1 } else { 1.0 };

    let x = |n: f64| LEFT + (n - n_min) / n_span * plot_w;
    let y = |t: f64| TOP + plot_h - t / t_max * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, y0) = (LEFT, TOP + plot_h);
    let _ = writeln!(
        s,
        r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#,
        LEFT + plot_w
    );
    let _ = writeln!(
        s,
        r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{TOP}" stroke="black"/>"#
    );

    for &(n, _) in points {
        let px = x(n as f64);
        let _ = writeln!(
            s,
            r#"<text x="{px:.1}" y="{:.1}" text-anchor="middle">{n}</text>"#,
            y0 + 18.0
        );
    }
    for k in 0..=4 {
        let t = t_max * k as f64 / 4.0;
        let py = y(t);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{t:.3}</text>"#,
            LEFT - 6.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">ambient dimension n</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">seconds</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    let coords: Vec<String> = points
        .iter()
        .map(|&(n, t)| format!("{:.1},{:.1}", x(n as f64), y(t)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
        coords.join(" ")
    );
    s.push_str("</svg>\n");
    s
}
