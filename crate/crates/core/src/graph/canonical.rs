//! Canonical byte encodings of folded pointed graphs.
//!
//! A folded graph is a deterministic partial automaton, so a breadth-first
//! traversal from the basepoint that explores outgoing labels in ascending
//! order and then incoming labels in ascending order visits the basepoint
//! component in an order independent of vertex naming. Renumbering vertices
//! in discovery order therefore gives equal encodings exactly for isomorphic
//! pointed labeled graphs.
//!
//! The encoding doubles as the line-record export format: a header line
//! `<vertex count> <basepoint id>` followed by one line `origin label
//! terminus` per edge, sorted, with labels printed as lowercase letters.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Edge, GraphError, RawGraph};

/// Canonical byte encoding of a folded pointed labeled graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        core::str::from_utf8(&self.0).expect("encoding is ASCII")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({:?})", self.as_str())
    }
}

fn label_char(label: u32) -> char {
    debug_assert!(label >= 1 && label <= 26, "record format covers ranks up to 26");
    (b'a' + (label - 1) as u8) as char
}

/// BFS discovery numbering from the basepoint (outgoing labels ascending,
/// then incoming), plus the indices of edges in the basepoint component.
/// Unreached vertices keep `usize::MAX`.
fn canonical_ids(g: &RawGraph) -> Result<(Vec<usize>, Vec<usize>, usize), GraphError> {
    let r = g.rank() as usize;
    let n = g.num_vertices();
    let mut out = vec![usize::MAX; n * r];
    let mut inc = vec![usize::MAX; n * r];
    for (i, e) in g.edges().iter().enumerate() {
        let o = e.origin * r + (e.label - 1) as usize;
        let t = e.terminus * r + (e.label - 1) as usize;
        if out[o] != usize::MAX || inc[t] != usize::MAX {
            return Err(GraphError::NotFolded);
        }
        out[o] = i;
        inc[t] = i;
    }
    let mut id = vec![usize::MAX; n];
    let mut order = 0usize;
    let mut queue = VecDeque::new();
    id[g.basepoint()] = 0;
    order += 1;
    queue.push_back(g.basepoint());
    let mut edges_seen: Vec<usize> = Vec::with_capacity(g.num_edges());
    while let Some(v) = queue.pop_front() {
        for (table, forward) in [(&out, true), (&inc, false)] {
            for lbl in 0..r {
                let e_idx = table[v * r + lbl];
                if e_idx == usize::MAX {
                    continue;
                }
                if forward {
                    edges_seen.push(e_idx);
                }
                let e = &g.edges()[e_idx];
                let far = if forward { e.terminus } else { e.origin };
                if id[far] == usize::MAX {
                    id[far] = order;
                    order += 1;
                    queue.push_back(far);
                }
            }
        }
    }
    Ok((id, edges_seen, order))
}

/// Canonicalize the basepoint component of a folded graph.
///
/// Errors with [`GraphError::NotFolded`] when some vertex has two equally
/// labeled edges in one direction (the traversal would be ambiguous).
pub(super) fn canonical_form_folded(g: &RawGraph) -> Result<CanonicalForm, GraphError> {
    let (id, edges_seen, order) = canonical_ids(g)?;
    let mut canon: Vec<Edge> = edges_seen
        .into_iter()
        .map(|i| {
            let e = &g.edges()[i];
            Edge { origin: id[e.origin], label: e.label, terminus: id[e.terminus] }
        })
        .collect();
    canon.sort_unstable();
    Ok(CanonicalForm(render(order, 0, &canon).into_bytes()))
}

/// The same graph with vertices renamed into canonical BFS order and edges
/// sorted; its record rendering equals [`canonical_form_folded`].
pub(super) fn canonicalized_raw(g: &RawGraph) -> Result<RawGraph, GraphError> {
    let (id, edges_seen, order) = canonical_ids(g)?;
    let mut canon: Vec<Edge> = edges_seen
        .into_iter()
        .map(|i| {
            let e = &g.edges()[i];
            Edge { origin: id[e.origin], label: e.label, terminus: id[e.terminus] }
        })
        .collect();
    canon.sort_unstable();
    RawGraph::new(g.rank(), order, 0, canon)
}

pub(crate) fn render(num_vertices: usize, basepoint: usize, edges: &[Edge]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    let _ = writeln!(s, "{num_vertices} {basepoint}");
    for e in edges {
        let _ = writeln!(s, "{} {} {}", e.origin, label_char(e.label), e.terminus);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fold_all, to_core, RawGraph};
    use crate::words::Word;

    fn w2(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn relabeling_is_invisible() {
        let core = to_core(&RawGraph::bouquet(2, &[w2("aBa"), w2("AAb")]).unwrap());
        let base = core.canonical_form();
        for perm in [[1usize, 0, 3, 2], [3, 2, 1, 0], [2, 0, 3, 1]] {
            let relabeled = core.raw().relabeled(&perm).unwrap();
            assert_eq!(canonical_form_folded(&relabeled).unwrap(), base);
        }
    }

    #[test]
    fn different_graphs_differ() {
        let rose2 = to_core(&RawGraph::bouquet(2, &[w2("a"), w2("b")]).unwrap());
        let rose1 = to_core(&RawGraph::bouquet(2, &[w2("a")]).unwrap());
        assert_ne!(rose2.canonical_form(), rose1.canonical_form());
        let aabb = to_core(&RawGraph::single_loop(&w2("aabb")));
        let abab = to_core(&RawGraph::single_loop(&w2("abab")));
        assert_ne!(aabb.canonical_form(), abab.canonical_form());
    }

    #[test]
    fn unfolded_input_is_rejected() {
        let g = RawGraph::bouquet(2, &[w2("ab"), w2("ab")]).unwrap();
        assert_eq!(canonical_form_folded(&g), Err(GraphError::NotFolded));
        assert!(canonical_form_folded(&fold_all(&g)).is_ok());
    }

    #[test]
    fn encoding_is_the_record_format() {
        let core = to_core(&RawGraph::single_loop(&w2("aabb")));
        assert_eq!(core.canonical_form().as_str(), "4 0\n0 a 1\n1 a 3\n2 b 0\n3 b 2\n");
    }
}
