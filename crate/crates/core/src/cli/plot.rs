//! Static SVG scatter of spectrum points.

use std::fmt::Write as _;

use super::report::Point;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 48.0;
const COLORS: [&str; 7] = [
    "#1b1b1b", "#d62728", "#ff7f0e", "#bcbd22", "#1f77b4", "#17becf", "#9467bd",
];

/// One marker ring per series; ring radius grows with the series index so
/// points shared by several sets stay distinguishable.
pub fn scatter_svg(title: &str, series: &[(String, Vec<Point>)]) -> String {
    let all: Vec<Point> = series.iter().flat_map(|(_, ps)| ps.iter().copied()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = all.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), p| (a.min(p[0]), b.max(p[0]), c.min(p[1]), d.max(p[1])),
    );
    if all.is_empty() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    // Equal aspect, at least one unit wide, with a little padding.
    let half = ((x1 - x0).max(y1 - y0).max(1.0)) * 0.6;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let scale = (SIZE - 2.0 * MARGIN) / (2.0 * half);
    let sx = |x: f64| MARGIN + (x - (cx - half)) * scale;
    let sy = |y: f64| SIZE - MARGIN - (y - (cy - half)) * scale;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{}" viewBox="0 0 {SIZE} {}">"##,
        SIZE + 20.0 * series.len() as f64,
        SIZE + 20.0 * series.len() as f64
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="white"/>"##);
    let _ = writeln!(
        s,
        r##"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{}</text>"##,
        escape(title)
    );
    let _ = writeln!(
        s,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{w}" fill="none" stroke="#999"/>"##,
        w = SIZE - 2.0 * MARGIN
    );
    if (cx - half..=cx + half).contains(&0.0) {
        let _ = writeln!(
            s,
            r##"<line x1="{0}" y1="{MARGIN}" x2="{0}" y2="{1}" stroke="#ddd"/>"##,
            sx(0.0),
            SIZE - MARGIN
        );
    }
    if (cy - half..=cy + half).contains(&0.0) {
        let _ = writeln!(
            s,
            r##"<line x1="{MARGIN}" y1="{0}" x2="{1}" y2="{0}" stroke="#ddd"/>"##,
            sy(0.0),
            SIZE - MARGIN
        );
    }
    let _ = writeln!(
        s,
        r##"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="11">Re [{:.3}, {:.3}]  Im [{:.3}, {:.3}]</text>"##,
        SIZE - MARGIN + 16.0,
        cx - half,
        cx + half,
        cy - half,
        cy + half
    );
    for (k, (label, ps)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let r = 3.0 + 2.0 * (k % COLORS.len()) as f64;
        for p in ps {
            let _ = writeln!(
                s,
                r##"<circle cx="{:.2}" cy="{:.2}" r="{r}" fill="none" stroke="{color}"><title>{} {}{:+}i</title></circle>"##,
                sx(p[0]),
                sy(p[1]),
                escape(label),
                p[0],
                p[1]
            );
        }
        let ly = SIZE + 20.0 * k as f64;
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="5" fill="none" stroke="{color}"/>"##,
            MARGIN + 5.0,
            ly - 4.0
        );
        let _ = writeln!(
            s,
            r##"<text x="{}" y="{ly}" font-family="sans-serif" font-size="12">{} ({})</text>"##,
            MARGIN + 16.0,
            escape(label),
            ps.len()
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svg_contains_one_marker_per_point() {
        let svg = scatter_svg(
            "t",
            &[("sp".into(), vec![[-1.0, 0.0], [1.0, 0.0]]), ("empty".into(), vec![])],
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<title>").count(), 2);
        assert!(svg.contains("sp (2)") && svg.contains("empty (0)"));
        // Degenerate input still yields a finite picture.
        assert!(!scatter_svg("t", &[]).contains("NaN"));
    }
}
