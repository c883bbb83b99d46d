//! Minimal self-contained SVG line plots (no plotting dependency; the CSV is
//! the primary artifact).

use std::fmt::Write;

pub struct Series<'a> {
    pub label: &'a str,
    pub points: Vec<(f64, f64)>,
    pub color: &'a str,
}

pub fn line_plot(title: &str, x_label: &str, series: &[Series], comment: Option<&str>) -> String {
    let (w, h) = (640.0, 420.0);
    let (ml, mr, mt, mb) = (70.0, 20.0, 50.0, 50.0);
    let all: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().copied()).collect();
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        x0 = 0.0;
        x1 = 1.0;
        y0 = 0.0;
        y1 = 1.0;
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let pad = 0.05 * (y1 - y0);
    let (y0, y1) = (y0 - pad, y1 + pad);
    let sx = |x: f64| ml + (x - x0) / (x1 - x0) * (w - ml - mr);
    let sy = |y: f64| h - mb - (y - y0) / (y1 - y0) * (h - mt - mb);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    if let Some(c) = comment {
        writeln!(out, "<!-- {c} -->").unwrap();
    }
    writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="24" font-family="monospace" font-size="15" text-anchor="middle">{title}</text>"#,
        w / 2.0
    )
    .unwrap();
    // axes
    writeln!(
        out,
        r#"<line x1="{ml}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#,
        h - mb,
        w - mr
    )
    .unwrap();
    writeln!(
        out,
        r#"<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{}" stroke="black"/>"#,
        h - mb
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="12" text-anchor="middle">{x_label}</text>"#,
        (ml + w - mr) / 2.0,
        h - 12.0
    )
    .unwrap();
    // min/max tick labels
    writeln!(
        out,
        r#"<text x="{ml}" y="{}" font-family="monospace" font-size="11" text-anchor="middle">{x0:.3}</text>"#,
        h - mb + 16.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="11" text-anchor="middle">{x1:.3}</text>"#,
        w - mr,
        h - mb + 16.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="11" text-anchor="end">{y0:.3}</text>"#,
        ml - 6.0,
        h - mb
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="11" text-anchor="end">{y1:.3}</text>"#,
        ml - 6.0,
        mt + 4.0
    )
    .unwrap();
    for (i, s) in series.iter().enumerate() {
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            pts.join(" "),
            s.color
        )
        .unwrap();
        for &(x, y) in &s.points {
            writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#,
                sx(x),
                sy(y),
                s.color
            )
            .unwrap();
        }
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="12" fill="{}">{}</text>"#,
            w - mr - 180.0,
            mt + 16.0 * (i as f64 + 1.0),
            s.color,
            s.label
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
