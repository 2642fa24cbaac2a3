//! SVG rendering. Drawings use one user unit per lattice unit with the y axis pointing up; the
//! viewBox is the bounding box of the drawing plus a margin of one unit. Red is dashed, blue solid.

use std::collections::BTreeMap;
use std::fmt::Write;

use tropline_core::rational::{self, Rational};
use tropline_core::{Arrangement, Colour, Edge, NewtonSubdivision, Point};

const STYLE: &str = "<style>\
.face{stroke:none}.triangle{fill:#f3e6c4}.parallelogram{fill:#c9dcef}.hexagon{fill:#d5ecd0}.other{fill:#eeeeee}\
.edge{stroke:#222;stroke-width:0.04;stroke-linecap:round}\
.red{stroke:#c62828}.red.edge,.red.ray{stroke-dasharray:0.15 0.1}.blue{stroke:#1565c0}\
.ray{stroke:#222;stroke-width:0.04;fill:none}.center{fill:#222}.center.red{fill:#c62828}.center.blue{fill:#1565c0}.vertex{fill:#222}\
</style>";

fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn to_f64(q: &Rational) -> f64 {
    let s = rational::to_string(q);
    match s.split_once('/') {
        Some((p, d)) => p.parse::<f64>().unwrap_or(0.0) / d.parse::<f64>().unwrap_or(1.0),
        None => s.parse().unwrap_or(0.0),
    }
}

fn header(out: &mut String, min_x: f64, min_y: f64, max_x: f64, max_y: f64) {
    let (x0, y0) = (min_x - 1.0, -max_y - 1.0);
    let (w, h) = (max_x - min_x + 2.0, max_y - min_y + 2.0);
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">",
        num(x0),
        num(y0),
        num(w),
        num(h),
        num(w * 40.0),
        num(h * 40.0)
    );
    out.push('\n');
    out.push_str(STYLE);
    out.push('\n');
}

fn colour_class(c: Option<Colour>) -> &'static str {
    match c {
        Some(Colour::Red) => " red",
        Some(Colour::Blue) => " blue",
        None => "",
    }
}

/// Faces shaded by shape, then edges, then vertices.
pub fn render_subdivision(sub: &NewtonSubdivision, colours: Option<&BTreeMap<Edge, Colour>>) -> String {
    let n = sub.n() as f64;
    let mut out = String::new();
    header(&mut out, 0.0, 0.0, n, n);
    for f in sub.faces() {
        let shape = match f.profile() {
            Ok(p) if p.is_triangle() => "triangle",
            Ok(p) if p.is_parallelogram() => "parallelogram",
            Ok(p) if p.is_hexagon() => "hexagon",
            _ => "other",
        };
        let pts: Vec<String> = f.cycle.iter().map(|p| format!("{},{}", p.x, -p.y)).collect();
        let _ = writeln!(out, "<polygon class=\"face {shape}\" points=\"{}\"/>", pts.join(" "));
    }
    for e in sub.edges() {
        let class = colour_class(colours.and_then(|c| c.get(e).copied()));
        let _ = writeln!(
            out,
            "<line class=\"edge{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            e.a.x, -e.a.y, e.b.x, -e.b.y
        );
    }
    for v in sub.vertices() {
        let _ = writeln!(
            out,
            "<circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"0.07\"/>",
            v.x, -v.y
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Rays clipped to the box spanned by the centers and the vertices of the arrangement.
pub fn render_arrangement(arr: &Arrangement) -> String {
    let pts: Vec<(f64, f64)> = arr
        .lines()
        .iter()
        .map(|l| &l.center)
        .chain(arr.vertices().iter())
        .map(|p: &Point| (to_f64(&p.x), to_f64(&p.y)))
        .collect();
    let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let mut out = String::new();
    header(&mut out, min_x, min_y, max_x, max_y);
    let (lo_x, hi_x, lo_y, hi_y) = (min_x - 1.0, max_x + 1.0, min_y - 1.0, max_y + 1.0);
    for l in arr.lines() {
        let (cx, cy) = (to_f64(&l.center.x), to_f64(&l.center.y));
        let t1 = (hi_x - cx).min(hi_y - cy);
        let ends = [(cx + t1, cy + t1), (lo_x, cy), (cx, lo_y)];
        let d: String = ends
            .iter()
            .map(|(x, y)| format!("M{} {}L{} {}", num(cx), num(-cy), num(*x), num(-*y)))
            .collect();
        let class = colour_class(l.colour);
        let _ = writeln!(out, "<path class=\"ray{class}\" d=\"{d}\"/>");
        let _ = writeln!(
            out,
            "<circle class=\"center{class}\" cx=\"{}\" cy=\"{}\" r=\"0.08\"/>",
            num(cx),
            num(-cy)
        );
    }
    out.push_str("</svg>\n");
    out
}
