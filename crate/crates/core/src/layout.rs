//! Clockwise circular embeddings and their SVG and DOT renderings.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::Write;

use crate::error::{param, Result};
use crate::graph::{Graph, VertexOrdering};

pub const DEFAULT_START_ANGLE: f64 = FRAC_PI_2;

const VIEWBOX: f64 = 600.0;
const MARGIN: f64 = 40.0;
const NODE_RADIUS: f64 = 14.0;

#[derive(Debug, Clone, PartialEq)]
pub struct CircularLayout {
    pub order: VertexOrdering,
    /// `positions[v - 1]` is the point of vertex `v`.
    pub positions: Vec<(f64, f64)>,
    pub radius: f64,
    pub start_angle: f64,
}

impl CircularLayout {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Angle of the vertex at `rank` (0-based).
    pub fn angle_at(&self, rank: usize) -> f64 {
        self.start_angle - TAU * rank as f64 / self.len() as f64
    }
}

/// Places the vertex at rank `k` at angle `start_angle - 2πk/n`.
pub fn circular_layout(
    g: &Graph,
    order: &VertexOrdering,
    radius: f64,
    start_angle: f64,
) -> Result<CircularLayout> {
    let n = g.order();
    if order.len() != n {
        return Err(param(format!(
            "ordering has {} vertices, graph has {n}",
            order.len()
        )));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(param("radius must be positive and finite"));
    }
    if !start_angle.is_finite() {
        return Err(param("start angle must be finite"));
    }
    let mut positions = vec![(0.0, 0.0); n];
    for (k, &v) in order.as_slice().iter().enumerate() {
        let theta = start_angle - TAU * k as f64 / n as f64;
        positions[v - 1] = (radius * theta.cos(), radius * theta.sin());
    }
    Ok(CircularLayout {
        order: order.clone(),
        positions,
        radius,
        start_angle,
    })
}

fn fixed(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn check_sizes(layout: &CircularLayout, g: &Graph) -> Result<()> {
    if layout.len() != g.order() {
        return Err(param(format!(
            "layout has {} vertices, graph has {}",
            layout.len(),
            g.order()
        )));
    }
    Ok(())
}

/// SVG in a 600 x 600 viewbox, y pointing up in layout space.
pub fn emit_svg(layout: &CircularLayout, g: &Graph) -> Result<String> {
    check_sizes(layout, g)?;
    let scale = (VIEWBOX / 2.0 - MARGIN) / layout.radius;
    let to_screen = |(x, y): (f64, f64)| (VIEWBOX / 2.0 + scale * x, VIEWBOX / 2.0 - scale * y);
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 600 600\" width=\"600\" height=\"600\">"
    )
    .unwrap();
    writeln!(out, "<g stroke=\"#333333\" stroke-width=\"1.5\">").unwrap();
    for (i, j) in g.edges() {
        let (x1, y1) = to_screen(layout.positions[i - 1]);
        let (x2, y2) = to_screen(layout.positions[j - 1]);
        writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            fixed(x1),
            fixed(y1),
            fixed(x2),
            fixed(y2)
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(
        out,
        "<g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
    )
    .unwrap();
    for v in 1..=g.order() {
        let (x, y) = to_screen(layout.positions[v - 1]);
        writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#ffffff\" stroke=\"#000000\"/>",
            fixed(x),
            fixed(y),
            fixed(NODE_RADIUS)
        )
        .unwrap();
        writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" dy=\"4\">{v}</text>",
            fixed(x),
            fixed(y)
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}

/// Graphviz source with pinned positions, for `neato -n` or `fdp`.
pub fn emit_dot(layout: &CircularLayout, g: &Graph) -> Result<String> {
    check_sizes(layout, g)?;
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 1..=g.order() {
        let (x, y) = layout.positions[v - 1];
        writeln!(out, "  {v} [pos=\"{},{}!\"];", fixed(x), fixed(y)).unwrap();
    }
    for (i, j) in g.edges() {
        writeln!(out, "  {i} -- {j};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
