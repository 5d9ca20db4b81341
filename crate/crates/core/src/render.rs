//! Annotated drawings of a scheme: every edge is labelled `x` when its strip
//! is switched and `=` otherwise. Vertices sit on a circle in id order; no
//! attempt is made to avoid crossings.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::scheme::Scheme;

fn mark(scheme: &Scheme, edge: usize) -> &'static str {
    if scheme.signs().get(edge) {
        "x"
    } else {
        "="
    }
}

/// Vertices with their rotations, then edges with their marks.
pub fn to_text(scheme: &Scheme) -> String {
    let g = scheme.graph();
    let mut out = String::new();
    for v in 0..g.vertex_count() {
        let darts: Vec<String> = scheme.rotation().at(v).iter().map(ToString::to_string).collect();
        if darts.is_empty() {
            let _ = writeln!(out, "vertex {v}: disk");
        } else {
            let _ = writeln!(out, "vertex {v}: ({})", darts.join(" "));
        }
    }
    for (e, (u, v)) in g.edges().enumerate() {
        let _ = writeln!(out, "edge {e}: {u} -- {v} [{}]", mark(scheme, e));
    }
    out
}

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(scheme: &Scheme, name: &str) -> String {
    let g = scheme.graph();
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", quote(name));
    let _ = writeln!(out, "  node [shape=circle];");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {v};");
    }
    for (e, (u, v)) in g.edges().enumerate() {
        let _ = writeln!(out, "  {u} -- {v} [label=\"{}\", id=\"e{e}\"];", mark(scheme, e));
    }
    out.push_str("}\n");
    out
}

const SIZE: f64 = 400.0;
const ORBIT: f64 = 140.0;
const DISK: f64 = 14.0;

fn position(v: usize, n: usize) -> (f64, f64) {
    if n == 1 {
        return (SIZE / 2.0, SIZE / 2.0);
    }
    let angle = 2.0 * PI * v as f64 / n as f64 - PI / 2.0;
    (SIZE / 2.0 + ORBIT * angle.cos(), SIZE / 2.0 + ORBIT * angle.sin())
}

pub fn to_svg(scheme: &Scheme) -> String {
    let g = scheme.graph();
    let n = g.vertex_count();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(out, "  <g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">");

    let mut seen_pairs: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    let mut labels = Vec::new();
    for (e, (u, v)) in g.edges().enumerate() {
        let key = (u.min(v), u.max(v));
        let k = *seen_pairs.entry(key).and_modify(|k| *k += 1).or_insert(0);
        let (x1, y1) = position(key.0, n);
        if u == v {
            // loops fan out away from the centre, growing with each loop at the vertex
            let (dx, dy) = if n == 1 {
                let a = 2.0 * PI * k as f64 / g.loop_count(u).max(1) as f64 - PI / 2.0;
                (a.cos(), a.sin())
            } else {
                let (cx, cy) = (x1 - SIZE / 2.0, y1 - SIZE / 2.0);
                let len = (cx * cx + cy * cy).sqrt();
                (cx / len, cy / len)
            };
            let r = 20.0 + if n == 1 { 0.0 } else { 10.0 * k as f64 };
            let (cx, cy) = (x1 + dx * (DISK + r - 4.0), y1 + dy * (DISK + r - 4.0));
            let _ = writeln!(out, "    <circle id=\"e{e}\" cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{r:.2}\"/>");
            labels.push((e, cx + dx * r, cy + dy * r));
        } else {
            let total = g
                .edges()
                .filter(|&(a, b)| (a.min(b), a.max(b)) == key)
                .count();
            let (x2, y2) = position(key.1, n);
            let offset = (k as f64 - (total as f64 - 1.0) / 2.0) * 36.0;
            let (dx, dy) = (x2 - x1, y2 - y1);
            let len = (dx * dx + dy * dy).sqrt();
            let (px, py) = (-dy / len, dx / len);
            let (mx, my) = ((x1 + x2) / 2.0 + px * offset, (y1 + y2) / 2.0 + py * offset);
            // control point placed so the curve passes through (mx, my)
            let (qx, qy) = (2.0 * mx - (x1 + x2) / 2.0, 2.0 * my - (y1 + y2) / 2.0);
            let _ = writeln!(
                out,
                "    <path id=\"e{e}\" d=\"M {x1:.2} {y1:.2} Q {qx:.2} {qy:.2} {x2:.2} {y2:.2}\"/>"
            );
            labels.push((e, mx, my));
        }
    }
    let _ = writeln!(out, "  </g>");

    let _ = writeln!(out, "  <g fill=\"white\" stroke=\"black\" stroke-width=\"1.5\">");
    for v in 0..n {
        let (x, y) = position(v, n);
        let _ = writeln!(out, "    <circle id=\"v{v}\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{DISK}\"/>");
    }
    let _ = writeln!(out, "  </g>");

    let _ = writeln!(out, "  <g font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" dominant-baseline=\"central\">");
    for v in 0..n {
        let (x, y) = position(v, n);
        let _ = writeln!(out, "    <text x=\"{x:.2}\" y=\"{y:.2}\">{v}</text>");
    }
    for (e, x, y) in labels {
        let _ = writeln!(
            out,
            "    <text class=\"edge-label\" x=\"{x:.2}\" y=\"{y:.2}\" fill=\"{}\">{}</text>",
            if scheme.signs().get(e) { "crimson" } else { "steelblue" },
            mark(scheme, e)
        );
    }
    let _ = writeln!(out, "  </g>");
    out.push_str("</svg>\n");
    out
}
