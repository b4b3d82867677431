//! Window-restricted walk graphs and their DOT and TikZ renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::enumerate::{count_table, WalkCount};
use crate::error::Result;
use crate::geom::{LatticePoint, Window};
use crate::stepset::ConstraintSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub source: LatticePoint,
    pub step: LatticePoint,
    pub target: LatticePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeGraph {
    pub window: Window,
    pub steps: Vec<LatticePoint>,
    pub constraint: String,
    /// free-form note on how the step set was truncated, if it was
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<String>,
    pub vertices: BTreeMap<LatticePoint, WalkCount>,
    /// edges between two window vertices, sorted by `(source, step)`
    pub edges: Vec<Edge>,
    /// `(source, step)` pairs whose target is allowed but outside the window
    pub clipped: Vec<(LatticePoint, LatticePoint)>,
}

impl LatticeGraph {
    pub fn has_directed_cycle(&self) -> bool {
        let index: BTreeMap<LatticePoint, usize> =
            self.vertices.keys().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut g: DiGraph<(), ()> = DiGraph::new();
        let nodes: Vec<_> = (0..index.len()).map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(nodes[index[&e.source]], nodes[index[&e.target]], ());
        }
        is_cyclic_directed(&g)
    }

    /// Whether every edge satisfies `target = source + step` with an allowed target.
    pub fn edges_consistent(&self, constraint: &ConstraintSpec) -> bool {
        self.edges.iter().all(|e| {
            e.source.checked_add(e.step) == Some(e.target)
                && self.steps.contains(&e.step)
                && constraint.contains(e.target)
        })
    }
}

/// Reachable points of a window, labelled by their walk counts, with the step edges
/// between them.
pub fn build_graph(
    steps: &[LatticePoint],
    constraint: &ConstraintSpec,
    window: Window,
    max_len: Option<usize>,
) -> Result<LatticeGraph> {
    let table = count_table(steps, window, constraint, max_len)?;
    let mut edges = Vec::new();
    let mut clipped = Vec::new();
    for &v in table.entries.keys() {
        for &s in steps {
            let Some(t) = v.checked_add(s) else { continue };
            if !constraint.contains(t) {
                continue;
            }
            if table.entries.contains_key(&t) {
                edges.push(Edge {
                    source: v,
                    step: s,
                    target: t,
                });
            } else if !window.contains(t) {
                clipped.push((v, s));
            }
        }
    }
    edges.sort();
    clipped.sort();
    // canonical order keeps the export independent of how the steps were listed
    let mut sorted = steps.to_vec();
    sorted.sort();
    sorted.dedup();
    Ok(LatticeGraph {
        window,
        steps: sorted,
        constraint: constraint.label(),
        truncation: None,
        vertices: table.entries,
        edges,
        clipped,
    })
}

fn coord_id(v: i64) -> String {
    if v < 0 {
        format!("m{}", v.unsigned_abs())
    } else {
        v.to_string()
    }
}

pub fn node_id(p: LatticePoint) -> String {
    format!("n_{}_{}", coord_id(p.x), coord_id(p.y))
}

fn step_label(s: LatticePoint) -> String {
    format!("({},{})", s.x, s.y)
}

pub fn emit_dot(g: &LatticeGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph walks {\n");
    let _ = writeln!(out, "  // steps: {}", g.steps.iter().map(|s| step_label(*s)).collect::<Vec<_>>().join(" "));
    let _ = writeln!(out, "  // constraint: {}", g.constraint);
    if let Some(t) = &g.truncation {
        let _ = writeln!(out, "  // truncation: {t}");
    }
    out.push_str("  node [shape=circle];\n");
    for (p, c) in &g.vertices {
        let _ = writeln!(
            out,
            "  {} [label=\"{}\", pos=\"{},{}!\"];",
            node_id(*p),
            c.label(),
            p.x,
            p.y
        );
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\"];",
            node_id(e.source),
            node_id(e.target),
            step_label(e.step)
        );
    }
    out.push_str("}\n");
    out
}

const PALETTE: [&str; 8] = [
    "red!80!black",
    "blue!80!black",
    "green!50!black",
    "orange",
    "violet",
    "teal",
    "brown",
    "magenta",
];

/// The `tikzpicture` environment alone.
pub fn emit_tikz_picture(g: &LatticeGraph) -> String {
    let colour: BTreeMap<LatticePoint, &str> = g
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| (*s, PALETTE[i % PALETTE.len()]))
        .collect();
    let mut out = String::new();
    out.push_str("\\begin{tikzpicture}[x=1.4cm, y=1.4cm, >=stealth]\n");
    for e in &g.edges {
        let _ = writeln!(
            out,
            "  \\draw[->, {}, shorten <=7pt, shorten >=7pt] ({},{}) -- ({},{});",
            colour[&e.step], e.source.x, e.source.y, e.target.x, e.target.y
        );
    }
    for (v, s) in &g.clipped {
        // half an edge, dotted, heading out of the window
        let _ = writeln!(
            out,
            "  \\draw[dotted, {}, shorten <=7pt] ({},{}) -- ({},{});",
            colour[s],
            v.x,
            v.y,
            v.x as f64 + s.x as f64 / 2.0,
            v.y as f64 + s.y as f64 / 2.0
        );
    }
    for (p, c) in &g.vertices {
        let _ = writeln!(
            out,
            "  \\node[circle, draw, fill=white, inner sep=1pt, minimum size=14pt, font=\\scriptsize] ({}) at ({},{}) {{{}}};",
            node_id(*p),
            p.x,
            p.y,
            c.label()
        );
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// A complete standalone LaTeX document around [`emit_tikz_picture`].
pub fn emit_tikz(g: &LatticeGraph) -> String {
    let mut out = String::new();
    out.push_str("\\documentclass[tikz]{standalone}\n");
    out.push_str("\\usepackage[utf8]{inputenc}\n");
    out.push_str("\\usepackage{newunicodechar}\n");
    out.push_str("\\newunicodechar{≥}{\\ensuremath{\\geq}}\n");
    out.push_str("\\begin{document}\n");
    out.push_str(&emit_tikz_picture(g));
    out.push_str("\\end{document}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_ids() {
        assert_eq!(node_id(LatticePoint::new(-3, 2)), "n_m3_2");
        assert_eq!(node_id(LatticePoint::new(0, -10)), "n_0_m10");
    }

    #[test]
    fn empty_step_set_is_a_single_node() {
        let g = build_graph(&[], &ConstraintSpec::FullPlane, Window::square(2), None).unwrap();
        let dot = emit_dot(&g);
        assert!(dot.contains("n_0_0 [label=\"1\", pos=\"0,0!\"];"));
        assert_eq!(g.vertices.len(), 1);
        assert!(g.edges.is_empty());
    }
}
