//! Plain-text rendering of a [`Report`].

use std::fmt::Write;

use newton_forge::analysis::PolygonReport;
use newton_forge::Report;

fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// `Σ c_j z^j`, dropping zero terms; `z` is a primitive p-th root of unity.
fn cyclotomic(coeffs: &[String]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(j, c)| match j {
            0 => c.clone(),
            1 => format!("{c}*z"),
            _ => format!("{c}*z^{j}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn polygon(out: &mut String, name: &str, poly: &PolygonReport) {
    let vertices: Vec<String> = poly.vertices.iter().map(|[x, y]| format!("({x}, {y})")).collect();
    writeln!(out, "{name} vertices: {}", vertices.join(" ")).unwrap();
    writeln!(out, "{name} slopes: {}", poly.slopes.join(" ")).unwrap();
}

pub fn report(r: &Report) -> String {
    let mut out = String::new();
    let rows: Vec<String> = r.instance.matrix.iter().map(|row| tuple(row)).collect();
    writeln!(out, "p = {}", r.instance.p).unwrap();
    writeln!(out, "J = [{}]", rows.join(", ")).unwrap();
    writeln!(out, "det J = {}, M = {}", r.det, r.m).unwrap();

    writeln!(out, "fundamental domain ({} points):", r.domain.len()).unwrap();
    for pt in &r.domain {
        writeln!(out, "  u = {}  r = {}  w = {}", tuple(&pt.u), tuple(&pt.r), pt.weight).unwrap();
    }
    writeln!(out, "orbits ({}):", r.orbits.len()).unwrap();
    for o in &r.orbits {
        let pts: Vec<String> = o.points.iter().map(|p| tuple(p)).collect();
        writeln!(out, "  [{}]  length {}  weight sum {}", pts.join(" -> "), o.length, o.slope_sum).unwrap();
    }
    match &r.witness {
        None => writeln!(out, "p-stable: yes").unwrap(),
        Some(w) => writeln!(
            out,
            "p-stable: no (u = {} of weight {} maps to {} of weight {})",
            tuple(&w.u),
            w.weight,
            tuple(&w.image),
            w.image_weight
        )
        .unwrap(),
    }

    let h: Vec<String> = r.hodge_numbers.iter().map(|(k, v)| format!("H({k}) = {v}")).collect();
    writeln!(out, "Hodge numbers: {}", h.join(", ")).unwrap();
    polygon(&mut out, "HP", &r.hodge_polygon);
    polygon(&mut out, "NP", &r.newton_polygon);
    let c = &r.comparison;
    writeln!(
        out,
        "NP vs HP: {}, {} endpoints, max gap {}",
        c.verdict,
        if c.same_endpoints { "same" } else { "different" },
        c.max_gap
    )
    .unwrap();

    if let Some(e) = &r.empirical {
        writeln!(out, "character sums:").unwrap();
        for (i, s) in e.sums.iter().enumerate() {
            writeln!(out, "  S_{} = {}", i + 1, cyclotomic(s)).unwrap();
        }
        let which = if e.l_is_inverse { "1/L" } else { "L" };
        writeln!(out, "{which} coefficients:").unwrap();
        for (k, (c, v)) in e.l_coefficients.iter().zip(&e.valuations).enumerate() {
            let v = v.as_deref().unwrap_or("inf");
            writeln!(out, "  t^{k}: {}  (ord {v})", cyclotomic(c)).unwrap();
        }
        polygon(&mut out, "empirical NP", &e.newton_polygon);
        let verdict = if e.matches_theory { "match" } else { "MISMATCH" };
        writeln!(out, "empirical NP vs predicted NP: {verdict}").unwrap();
    }
    if let Some(b) = &r.budget_exceeded {
        writeln!(out, "verification skipped: torus of {} points exceeds budget {}", b.required, b.limit).unwrap();
    }
    out
}
