//! Deterministic Graphviz DOT export.

use std::fmt::Write;

use crate::graph::{Graph, HPartition, TreeDecomposition};

fn edges(out: &mut String, g: &Graph) {
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
}

/// One node per vertex, one line per edge.
pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        match g.label(v) {
            Some(l) => {
                let _ = writeln!(out, "  {v} [label=\"{v}\\n{}\"];", l.replace('"', "\\\""));
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    edges(&mut out, g);
    out.push_str("}\n");
    out
}

/// `g` with every non-empty part drawn as a cluster.
pub fn partition_to_dot(g: &Graph, p: &HPartition) -> String {
    let mut out = String::from("graph G {\n");
    for (x, part) in p.parts().iter().enumerate() {
        if part.is_empty() {
            continue;
        }
        let _ = writeln!(out, "  subgraph cluster_{x} {{");
        let _ = writeln!(out, "    label=\"part {x}\";");
        for v in part {
            let _ = writeln!(out, "    {v};");
        }
        out.push_str("  }\n");
    }
    edges(&mut out, g);
    out.push_str("}\n");
    out
}

/// The decomposition tree with each bag as a record label.
pub fn decomposition_to_dot(td: &TreeDecomposition) -> String {
    let mut out = String::from("graph T {\n  node [shape=record];\n");
    for (i, bag) in td.bags().iter().enumerate() {
        let fields: Vec<String> = bag.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "  {i} [label=\"{{bag {i}|{}}}\"];", fields.join("|"));
    }
    edges(&mut out, td.tree());
    out.push_str("}\n");
    out
}
