use std::fmt::Write as _;

use crate::variety::{hasse_reduction, Relation};

/// Hasse diagram as DOT. Nilpotent entries are boxes, associative ones blue;
/// nodes and edges follow catalog order so output is byte-stable.
pub fn export_dot(rel: &Relation) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=TB;\n  node [shape=ellipse];\n");
    for (i, e) in rel.entries().iter().enumerate() {
        let mut attrs = vec![format!("label=\"{}\"", e.label)];
        if e.nilpotent {
            attrs.push("shape=box".into());
        }
        if e.associative {
            attrs.push("color=blue".into());
            attrs.push("fontcolor=blue".into());
        }
        writeln!(out, "  n{i} [{}];", attrs.join(", ")).unwrap();
    }
    for (s, t) in hasse_reduction(rel) {
        writeln!(out, "  n{s} -> n{t};").unwrap();
    }
    out.push_str("}\n");
    out
}
