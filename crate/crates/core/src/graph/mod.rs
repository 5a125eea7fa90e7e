//! Pointed, directed, labeled multigraphs and the fold/trim calculus.
//!
//! A [`RawGraph`] is an arbitrary finite graph with edges labeled by
//! generators (an inverse letter is represented by traversing an edge
//! backwards, so labels are always positive). Folding merges equally
//! labeled edges that share an origin or terminus; trimming peels
//! non-basepoint leaves. Iterating both to a fixpoint yields the core
//! graph of the subgroup spelled by the basepoint loops, represented by
//! the [`CoreGraph`] type whose invariants (folded, trimmed, connected)
//! are established on construction.

mod canonical;
mod fold;
mod morphism;

pub use canonical::CanonicalForm;
pub use fold::{fold_all, fold_all_seeded, fold_all_with, Workspace};
pub use morphism::{compute_morphism, Morphism};

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::words::Word;

pub type VertexId = usize;

/// A directed edge labeled by a (positive) generator index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub origin: VertexId,
    pub label: u32,
    pub terminus: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    InvalidVertex { vertex: VertexId, num_vertices: usize },
    InvalidLabel { label: u32, rank: u32 },
    InvalidBasepoint { basepoint: VertexId, num_vertices: usize },
    RankMismatch { left: u32, right: u32 },
    /// A vertex carries two equally labeled edges in the same direction.
    NotFolded,
    /// A non-basepoint vertex of degree ≤ 1, or a disconnected vertex.
    NotCore(&'static str),
    MalformedPartition(&'static str),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidVertex { vertex, num_vertices } => {
                write!(f, "vertex {vertex} out of range (graph has {num_vertices})")
            }
            GraphError::InvalidLabel { label, rank } => {
                write!(f, "edge label {label} out of range for rank {rank}")
            }
            GraphError::InvalidBasepoint { basepoint, num_vertices } => {
                write!(f, "basepoint {basepoint} out of range (graph has {num_vertices})")
            }
            GraphError::RankMismatch { left, right } => {
                write!(f, "graph rank mismatch: {left} vs {right}")
            }
            GraphError::NotFolded => write!(f, "graph is not folded"),
            GraphError::NotCore(why) => write!(f, "graph is not a core graph: {why}"),
            GraphError::MalformedPartition(why) => write!(f, "malformed partition: {why}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// A finite pointed directed labeled multigraph. Parallel edges and loops
/// are permitted; vertices are `0..num_vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGraph {
    rank: u32,
    num_vertices: usize,
    basepoint: VertexId,
    edges: Vec<Edge>,
}

impl RawGraph {
    pub fn new(
        rank: u32,
        num_vertices: usize,
        basepoint: VertexId,
        edges: Vec<Edge>,
    ) -> Result<RawGraph, GraphError> {
        if basepoint >= num_vertices {
            return Err(GraphError::InvalidBasepoint { basepoint, num_vertices });
        }
        for e in &edges {
            if e.origin >= num_vertices {
                return Err(GraphError::InvalidVertex { vertex: e.origin, num_vertices });
            }
            if e.terminus >= num_vertices {
                return Err(GraphError::InvalidVertex { vertex: e.terminus, num_vertices });
            }
            if e.label == 0 || e.label > rank {
                return Err(GraphError::InvalidLabel { label: e.label, rank });
            }
        }
        Ok(RawGraph { rank, num_vertices, basepoint, edges })
    }

    /// The one-vertex graph with no edges (core graph of the trivial subgroup).
    pub fn point(rank: u32) -> RawGraph {
        RawGraph { rank, num_vertices: 1, basepoint: 0, edges: Vec::new() }
    }

    /// A bouquet of loops at a common basepoint, one cycle per nonempty word.
    ///
    /// Inverse letters become backward edges, so the cycle spells the word
    /// exactly. All words must share `rank`.
    pub fn bouquet(rank: u32, words: &[Word]) -> Result<RawGraph, GraphError> {
        let mut g = RawGraph::point(rank);
        for w in words {
            if w.rank() != rank {
                return Err(GraphError::RankMismatch { left: rank, right: w.rank() });
            }
            g.attach_loop(w);
        }
        Ok(g)
    }

    /// A single cycle spelling `w` at the basepoint.
    pub fn single_loop(w: &Word) -> RawGraph {
        let mut g = RawGraph::point(w.rank());
        g.attach_loop(w);
        g
    }

    fn attach_loop(&mut self, w: &Word) {
        let n = w.len();
        if n == 0 {
            return;
        }
        let bp = self.basepoint;
        let first_new = self.num_vertices;
        self.num_vertices += n - 1;
        let vertex_at = |i: usize| -> VertexId {
            if i == 0 || i == n {
                bp
            } else {
                first_new + i - 1
            }
        };
        for (i, l) in w.letters().iter().enumerate() {
            let (from, to) = (vertex_at(i), vertex_at(i + 1));
            if l.is_positive() {
                self.edges.push(Edge { origin: from, label: l.generator(), terminus: to });
            } else {
                self.edges.push(Edge { origin: to, label: l.generator(), terminus: from });
            }
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn basepoint(&self) -> VertexId {
        self.basepoint
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Degree of a vertex, counting loop edges twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| (e.origin == v) as usize + (e.terminus == v) as usize)
            .sum()
    }

    /// Every non-basepoint vertex carries at least two distinct
    /// (label, direction) edge types. When this holds, reducing to the core
    /// graph needs foldings only, never a trim.
    pub fn no_trim_condition(&self) -> bool {
        // type encoding: label * 2 + direction
        let mut first_type: Vec<Option<u32>> = vec![None; self.num_vertices];
        let mut has_two: Vec<bool> = vec![false; self.num_vertices];
        let note = |v: VertexId, ty: u32, first_type: &mut Vec<Option<u32>>, has_two: &mut Vec<bool>| {
            match first_type[v] {
                None => first_type[v] = Some(ty),
                Some(t) if t != ty => has_two[v] = true,
                _ => {}
            }
        };
        for e in &self.edges {
            note(e.origin, e.label * 2, &mut first_type, &mut has_two);
            note(e.terminus, e.label * 2 + 1, &mut first_type, &mut has_two);
        }
        (0..self.num_vertices).all(|v| v == self.basepoint || has_two[v])
    }

    /// Copy of the graph with vertices renamed by `perm` (old id → new id).
    /// `perm` must be a permutation of `0..num_vertices`.
    pub fn relabeled(&self, perm: &[VertexId]) -> Result<RawGraph, GraphError> {
        if perm.len() != self.num_vertices {
            return Err(GraphError::MalformedPartition("permutation has wrong length"));
        }
        let mut seen = vec![false; self.num_vertices];
        for &p in perm {
            if p >= self.num_vertices || seen[p] {
                return Err(GraphError::MalformedPartition("not a permutation"));
            }
            seen[p] = true;
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { origin: perm[e.origin], label: e.label, terminus: perm[e.terminus] })
            .collect();
        RawGraph::new(self.rank, self.num_vertices, perm[self.basepoint], edges)
    }

    /// Keep only the connected component of the basepoint (edges traversable
    /// in either direction). Returns the subgraph and the number of vertices
    /// discarded.
    pub fn basepoint_component(&self) -> (RawGraph, usize) {
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); self.num_vertices];
        for e in &self.edges {
            adj[e.origin].push(e.terminus);
            adj[e.terminus].push(e.origin);
        }
        let mut reach = vec![false; self.num_vertices];
        let mut stack = vec![self.basepoint];
        reach[self.basepoint] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !reach[w] {
                    reach[w] = true;
                    stack.push(w);
                }
            }
        }
        let mut new_id = vec![usize::MAX; self.num_vertices];
        let mut next = 0;
        for v in 0..self.num_vertices {
            if reach[v] {
                new_id[v] = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| reach[e.origin])
            .map(|e| Edge { origin: new_id[e.origin], label: e.label, terminus: new_id[e.terminus] })
            .collect();
        let g = RawGraph {
            rank: self.rank,
            num_vertices: next,
            basepoint: new_id[self.basepoint],
            edges,
        };
        (g, self.num_vertices - next)
    }
}

/// Delete non-basepoint leaves (degree ≤ 1, loops counting twice) until none
/// remain. Returns the trimmed graph and the number of vertices deleted.
pub fn trim(g: &RawGraph) -> (RawGraph, usize) {
    let mut alive_v = vec![true; g.num_vertices];
    let mut alive_e = vec![true; g.edges.len()];
    let mut degree = vec![0usize; g.num_vertices];
    for e in &g.edges {
        degree[e.origin] += 1;
        degree[e.terminus] += 1;
    }
    let mut stack: Vec<VertexId> = (0..g.num_vertices)
        .filter(|&v| v != g.basepoint && degree[v] <= 1)
        .collect();
    let mut trimmed = 0;
    while let Some(v) = stack.pop() {
        if !alive_v[v] || v == g.basepoint || degree[v] > 1 {
            continue;
        }
        alive_v[v] = false;
        trimmed += 1;
        for (i, e) in g.edges.iter().enumerate() {
            if alive_e[i] && (e.origin == v || e.terminus == v) {
                alive_e[i] = false;
                for end in [e.origin, e.terminus] {
                    degree[end] -= 1;
                    if alive_v[end] && end != g.basepoint && degree[end] <= 1 {
                        stack.push(end);
                    }
                }
            }
        }
    }
    let mut new_id = vec![usize::MAX; g.num_vertices];
    let mut next = 0;
    for v in 0..g.num_vertices {
        if alive_v[v] {
            new_id[v] = next;
            next += 1;
        }
    }
    let edges = g
        .edges
        .iter()
        .zip(&alive_e)
        .filter(|(_, &a)| a)
        .map(|(e, _)| Edge { origin: new_id[e.origin], label: e.label, terminus: new_id[e.terminus] })
        .collect();
    (
        RawGraph { rank: g.rank, num_vertices: next, basepoint: new_id[g.basepoint], edges },
        trimmed,
    )
}

/// Counters from [`to_core_with_stats`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CoreStats {
    /// Edge-pair merges performed while folding.
    pub folds: usize,
    /// Vertices deleted by leaf trimming.
    pub trims: usize,
    /// Vertices discarded as unreachable from the basepoint.
    pub discarded: usize,
}

/// Fold and trim to the fixpoint, discarding anything unreachable from the
/// basepoint first.
pub fn to_core(g: &RawGraph) -> CoreGraph {
    to_core_with_stats(g).0
}

pub fn to_core_with_stats(g: &RawGraph) -> (CoreGraph, CoreStats) {
    let mut ws = Workspace::new();
    to_core_in(g, &mut ws)
}

pub fn to_core_in(g: &RawGraph, ws: &mut Workspace) -> (CoreGraph, CoreStats) {
    let (reached, discarded) = g.basepoint_component();
    let (folded, folds) = fold::fold_all_counting(&reached, ws);
    let (trimmed, trims) = trim(&folded);
    let core = CoreGraph::from_raw(trimmed).expect("fold+trim fixpoint is a core graph");
    (core, CoreStats { folds, trims, discarded })
}

/// A folded, trimmed, connected pointed graph: a deterministic partial
/// automaton. Construction validates the invariants; afterwards tracing a
/// letter from a vertex has at most one continuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreGraph {
    raw: RawGraph,
    // step tables: [v * rank + (label-1)] → (edge index + 1), 0 = absent
    out_step: Vec<u32>,
    in_step: Vec<u32>,
}

impl CoreGraph {
    /// Validate that `raw` is folded, trimmed and connected.
    pub fn from_raw(raw: RawGraph) -> Result<CoreGraph, GraphError> {
        let r = raw.rank as usize;
        let mut out_step = vec![0u32; raw.num_vertices * r];
        let mut in_step = vec![0u32; raw.num_vertices * r];
        for (i, e) in raw.edges.iter().enumerate() {
            let o = e.origin * r + (e.label - 1) as usize;
            let t = e.terminus * r + (e.label - 1) as usize;
            if out_step[o] != 0 || in_step[t] != 0 {
                return Err(GraphError::NotFolded);
            }
            out_step[o] = i as u32 + 1;
            in_step[t] = i as u32 + 1;
        }
        for v in 0..raw.num_vertices {
            if v != raw.basepoint && raw.degree(v) <= 1 {
                return Err(GraphError::NotCore("non-basepoint leaf"));
            }
        }
        let (_, discarded) = raw.basepoint_component();
        if discarded > 0 {
            return Err(GraphError::NotCore("disconnected"));
        }
        Ok(CoreGraph { raw, out_step, in_step })
    }

    pub fn raw(&self) -> &RawGraph {
        &self.raw
    }

    pub fn rank(&self) -> u32 {
        self.raw.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.raw.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.raw.edges.len()
    }

    pub fn basepoint(&self) -> VertexId {
        self.raw.basepoint
    }

    pub fn edges(&self) -> &[Edge] {
        &self.raw.edges
    }

    /// Follow `letter` from `v`: forward along an out-edge for a generator,
    /// backward along an in-edge for an inverse. Returns the far endpoint and
    /// the edge index.
    pub fn step(&self, v: VertexId, letter: crate::words::Letter) -> Option<(VertexId, usize)> {
        let slot = v * self.raw.rank as usize + (letter.generator() - 1) as usize;
        let table = if letter.is_positive() { &self.out_step } else { &self.in_step };
        match table[slot] {
            0 => None,
            idx => {
                let e = &self.raw.edges[(idx - 1) as usize];
                let far = if letter.is_positive() { e.terminus } else { e.origin };
                Some((far, (idx - 1) as usize))
            }
        }
    }

    /// Trace a word from `v`; `None` when some letter has no continuation.
    pub fn trace(&self, v: VertexId, w: &Word) -> Option<VertexId> {
        let mut cur = v;
        for &l in w.letters() {
            cur = self.step(cur, l)?.0;
        }
        Some(cur)
    }

    /// Rank of the subgroup: |E| − |V| + 1.
    pub fn cycle_rank(&self) -> usize {
        self.raw.edges.len() + 1 - self.raw.num_vertices
    }

    /// One vertex carrying one loop per generator — the core graph of the
    /// whole free group.
    pub fn is_rose(&self) -> bool {
        self.raw.num_vertices == 1
            && self.raw.edges.len() == self.raw.rank as usize
            && (1..=self.raw.rank).all(|l| self.raw.edges.iter().any(|e| e.label == l))
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form_folded(&self.raw).expect("core graphs are folded")
    }

    /// The isomorphic copy with vertices renamed into canonical traversal
    /// order (basepoint 0) and edges sorted.
    pub fn canonicalized(&self) -> CoreGraph {
        let raw = canonical::canonicalized_raw(&self.raw).expect("core graphs are folded");
        CoreGraph::from_raw(raw).expect("canonicalization preserves core invariants")
    }
}

/// Canonical form of the basepoint component of a folded [`RawGraph`]
/// (errors when the graph is not folded). [`CoreGraph::canonical_form`] is
/// the infallible version for validated core graphs.
pub fn folded_canonical_form(g: &RawGraph) -> Result<CanonicalForm, GraphError> {
    canonical::canonical_form_folded(g)
}

/// Collapse vertex blocks of `partition` to single vertices, re-attaching
/// all edges. The partition must cover every vertex exactly once.
pub fn quotient(g: &CoreGraph, partition: &[Vec<VertexId>]) -> Result<RawGraph, GraphError> {
    let n = g.num_vertices();
    let mut block_of = vec![usize::MAX; n];
    for (b, block) in partition.iter().enumerate() {
        for &v in block {
            if v >= n {
                return Err(GraphError::MalformedPartition("vertex out of range"));
            }
            if block_of[v] != usize::MAX {
                return Err(GraphError::MalformedPartition("blocks overlap"));
            }
            block_of[v] = b;
        }
    }
    if block_of.iter().any(|&b| b == usize::MAX) {
        return Err(GraphError::MalformedPartition("partition does not cover all vertices"));
    }
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge {
            origin: block_of[e.origin],
            label: e.label,
            terminus: block_of[e.terminus],
        })
        .collect();
    RawGraph::new(g.rank(), partition.len(), block_of[g.basepoint()], edges)
}
