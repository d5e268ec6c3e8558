use std::fmt::Write;

use newton_forge::LowerPolygon;
use num_rational::BigRational;
use num_traits::ToPrimitive;

const UNIT: f64 = 80.0;
const MARGIN: f64 = 40.0;
const HP_STYLE: &str = r##"stroke="#1f5fbf" stroke-width="2""##;
const NP_STYLE: &str = r##"stroke="#c0392b" stroke-width="2" stroke-dasharray="6 4""##;

fn vertex_lines(poly: &LowerPolygon) -> String {
    poly.vertices().iter().map(|(x, y)| format!("{x}\t{y}\n")).collect()
}

/// One `x<TAB>y` line per vertex. With both polygons, each block is headed
/// by a `# hp` / `# np` line.
pub fn tsv(hp: Option<&LowerPolygon>, np: Option<&LowerPolygon>) -> String {
    match (hp, np) {
        (Some(hp), Some(np)) => format!("# hp\n{}# np\n{}", vertex_lines(hp), vertex_lines(np)),
        (Some(poly), None) | (None, Some(poly)) => vertex_lines(poly),
        (None, None) => String::new(),
    }
}

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Overlay of the polygons on an integer grid. Coordinates are rounded to
/// three decimals so the bytes depend only on the vertices.
pub fn svg(hp: Option<&LowerPolygon>, np: Option<&LowerPolygon>) -> String {
    let polys: Vec<&LowerPolygon> = hp.into_iter().chain(np).collect();
    let x_max = polys.iter().map(|p| f(&p.end().0)).fold(1.0, f64::max).ceil();
    let y_max = polys.iter().map(|p| f(&p.end().1)).fold(1.0, f64::max).ceil();
    let width = x_max * UNIT + 2.0 * MARGIN;
    let height = y_max * UNIT + 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + x * UNIT;
    let sy = |y: f64| height - MARGIN - y * UNIT;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(s, r##"<g stroke="#dddddd" stroke-width="1">"##).unwrap();
    for i in 0..=x_max as i64 {
        let x = sx(i as f64);
        writeln!(s, r#"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}"/>"#, sy(0.0), sy(y_max)).unwrap();
    }
    for j in 0..=y_max as i64 {
        let y = sy(j as f64);
        writeln!(s, r#"<line x1="{:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}"/>"#, sx(0.0), sx(x_max)).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(
        s,
        r##"<g stroke="#000000" stroke-width="1"><line x1="{0:.3}" y1="{1:.3}" x2="{2:.3}" y2="{1:.3}"/><line x1="{0:.3}" y1="{1:.3}" x2="{0:.3}" y2="{3:.3}"/></g>"##,
        sx(0.0),
        sy(0.0),
        sx(x_max),
        sy(y_max)
    )
    .unwrap();
    writeln!(s, r#"<g font-family="monospace" font-size="12" fill="black">"#).unwrap();
    for i in 0..=x_max as i64 {
        writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{i}</text>"#, sx(i as f64), sy(0.0) + 16.0).unwrap();
    }
    for j in 0..=y_max as i64 {
        writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{j}</text>"#, sx(0.0) - 6.0, sy(j as f64) + 4.0).unwrap();
    }
    writeln!(s, "</g>").unwrap();

    let mut legend = Vec::new();
    if let Some(hp) = hp {
        polyline(&mut s, "hp", hp, HP_STYLE, &sx, &sy);
        legend.push(("HP", HP_STYLE));
    }
    if let Some(np) = np {
        polyline(&mut s, "np", np, NP_STYLE, &sx, &sy);
        legend.push(("NP", NP_STYLE));
    }
    for (k, (label, style)) in legend.iter().enumerate() {
        let y = MARGIN / 2.0 + 14.0 * k as f64;
        writeln!(
            s,
            r#"<line x1="{:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}" {style}/><text x="{:.3}" y="{:.3}" font-family="monospace" font-size="12">{label}</text>"#,
            MARGIN,
            MARGIN + 24.0,
            MARGIN + 30.0,
            y + 4.0
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn polyline(s: &mut String, id: &str, poly: &LowerPolygon, style: &str, sx: &dyn Fn(f64) -> f64, sy: &dyn Fn(f64) -> f64) {
    let pts: Vec<String> = poly
        .vertices()
        .iter()
        .map(|(x, y)| format!("{:.3},{:.3}", sx(f(x)), sy(f(y))))
        .collect();
    writeln!(s, r#"<polyline id="{id}" fill="none" {style} points="{}"/>"#, pts.join(" ")).unwrap();
    for (x, y) in poly.vertices() {
        writeln!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="none" {style}><title>({x}, {y})</title></circle>"#,
            sx(f(x)),
            sy(f(y))
        )
        .unwrap();
    }
}
