//! Graph output: the line-record format (the canonical encoding itself) and
//! a DOT rendering for external viewers. Both are byte-stable because both
//! are produced from the canonically relabeled graph.

use std::fmt::Write;

use stallings::graph::CoreGraph;

use crate::input::Alphabet;

/// The line-record format: `<vertex count> <basepoint>` then one
/// `origin label terminus` line per edge, canonically ordered.
pub fn records(core: &CoreGraph) -> String {
    core.canonical_form().as_str().to_owned()
}

/// DOT digraph with the basepoint drawn as a double circle and edges
/// annotated by their labels.
pub fn dot(core: &CoreGraph, alphabet: &Alphabet) -> String {
    let g = core.canonicalized();
    let mut s = String::from("digraph core {\n  rankdir=LR;\n");
    for v in 0..g.num_vertices() {
        let shape = if v == g.basepoint() { "doublecircle" } else { "circle" };
        let _ = writeln!(s, "  {v} [shape={shape}];");
    }
    for e in g.edges() {
        let _ = writeln!(
            s,
            "  {} -> {} [label=\"{}\"];",
            e.origin,
            e.terminus,
            alphabet.label_char(e.label)
        );
    }
    s.push_str("}\n");
    s
}

/// Human-oriented summary plus the record lines.
pub fn human(core: &CoreGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "vertices {}, edges {}, basepoint 0, subgroup rank {}",
        core.num_vertices(),
        core.num_edges(),
        core.cycle_rank()
    );
    s.push_str(records(core).as_str());
    s
}
