//! Stallings folding: merge equally labeled edges sharing an origin or a
//! terminus until no such pair remains. Folding is confluent, so any order
//! of merges yields the same graph up to isomorphism; [`fold_all`] uses a
//! fixed deterministic order and [`fold_all_seeded`] a seeded random one.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{Edge, RawGraph, VertexId};
use crate::words::Word;

/// Reusable scratch space for folding. Sweeps that fold millions of small
/// graphs should create one workspace per worker and reuse it; steady-state
/// folding then allocates nothing.
pub struct Workspace {
    rank: usize,
    n: usize,
    parent: Vec<u32>,
    size: Vec<u32>,
    // adjacency slot v * rank + (label-1) → live-ish edge ids (lazily compacted)
    out: Vec<Vec<u32>>,
    inc: Vec<Vec<u32>>,
    e_origin: Vec<u32>,
    e_label: Vec<u32>,
    e_terminus: Vec<u32>,
    e_alive: Vec<bool>,
    queue: VecDeque<u32>,
    label_counts: Vec<u32>,
    folds: usize,
}

impl Default for Workspace {
    fn default() -> Self {
        Workspace::new()
    }
}

impl Workspace {
    pub fn new() -> Workspace {
        Workspace {
            rank: 0,
            n: 0,
            parent: Vec::new(),
            size: Vec::new(),
            out: Vec::new(),
            inc: Vec::new(),
            e_origin: Vec::new(),
            e_label: Vec::new(),
            e_terminus: Vec::new(),
            e_alive: Vec::new(),
            queue: VecDeque::new(),
            label_counts: Vec::new(),
            folds: 0,
        }
    }

    pub(crate) fn begin(&mut self, rank: u32) {
        self.rank = rank as usize;
        self.n = 0;
        self.parent.clear();
        self.size.clear();
        self.e_origin.clear();
        self.e_label.clear();
        self.e_terminus.clear();
        self.e_alive.clear();
        self.queue.clear();
        self.folds = 0;
        // inner vectors keep their capacity across runs
        for list in self.out.iter_mut().chain(self.inc.iter_mut()) {
            list.clear();
        }
    }

    pub(crate) fn new_vertex(&mut self) -> u32 {
        let v = self.n as u32;
        self.n += 1;
        self.parent.push(v);
        self.size.push(1);
        let want = self.n * self.rank;
        while self.out.len() < want {
            self.out.push(Vec::new());
            self.inc.push(Vec::new());
        }
        v
    }

    pub(crate) fn add_edge(&mut self, origin: u32, label: u32, terminus: u32) {
        let id = self.e_origin.len() as u32;
        self.e_origin.push(origin);
        self.e_label.push(label);
        self.e_terminus.push(terminus);
        self.e_alive.push(true);
        self.out[origin as usize * self.rank + (label - 1) as usize].push(id);
        self.inc[terminus as usize * self.rank + (label - 1) as usize].push(id);
    }

    /// Attach a cycle spelling `w` at `bp` (inverse letters become backward
    /// edges).
    pub(crate) fn add_word_loop(&mut self, bp: u32, w: &Word) {
        let n = w.len();
        let mut prev = bp;
        for (i, l) in w.letters().iter().enumerate() {
            let next = if i == n - 1 { bp } else { self.new_vertex() };
            if l.is_positive() {
                self.add_edge(prev, l.generator(), next);
            } else {
                self.add_edge(next, l.generator(), prev);
            }
            prev = next;
        }
    }

    pub(crate) fn load_graph(&mut self, g: &RawGraph) {
        self.begin(g.rank());
        for _ in 0..g.num_vertices() {
            self.new_vertex();
        }
        for e in g.edges() {
            self.add_edge(e.origin as u32, e.label, e.terminus as u32);
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] as usize != v {
            let p = self.parent[v] as usize;
            self.parent[v] = self.parent[p];
            v = self.parent[v] as usize;
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (big, small) = if self.size[a] >= self.size[b] { (a, b) } else { (b, a) };
        self.parent[small] = big as u32;
        self.size[big] += self.size[small];
        for lbl in 0..self.rank {
            let from_slot = small * self.rank + lbl;
            let to_slot = big * self.rank + lbl;
            let mut moved = core::mem::take(&mut self.out[from_slot]);
            self.out[to_slot].extend_from_slice(&moved);
            moved.clear();
            self.out[from_slot] = moved;
            let mut moved = core::mem::take(&mut self.inc[from_slot]);
            self.inc[to_slot].extend_from_slice(&moved);
            moved.clear();
            self.inc[from_slot] = moved;
        }
        big
    }

    /// Compact the list at `slot`, keeping live edges, and report the first
    /// two when the list still holds a foldable pair.
    fn first_pair(&mut self, outgoing: bool, slot: usize) -> Option<(u32, u32)> {
        let alive = &self.e_alive;
        let list = if outgoing { &mut self.out[slot] } else { &mut self.inc[slot] };
        list.retain(|&e| alive[e as usize]);
        if list.len() >= 2 {
            Some((list[0], list[1]))
        } else {
            None
        }
    }

    pub(crate) fn run_fold(&mut self) -> usize {
        for v in 0..self.n {
            self.queue.push_back(v as u32);
        }
        while let Some(v0) = self.queue.pop_front() {
            let mut v = self.find(v0 as usize);
            'rescan: loop {
                for outgoing in [true, false] {
                    for lbl in 0..self.rank {
                        let slot = v * self.rank + lbl;
                        if let Some((keep, merge)) = self.first_pair(outgoing, slot) {
                            let (f1, f2) = if outgoing {
                                (self.e_terminus[keep as usize], self.e_terminus[merge as usize])
                            } else {
                                (self.e_origin[keep as usize], self.e_origin[merge as usize])
                            };
                            self.e_alive[merge as usize] = false;
                            self.folds += 1;
                            let f1 = self.find(f1 as usize);
                            let f2 = self.find(f2 as usize);
                            if f1 != f2 {
                                let winner = self.union(f1, f2);
                                self.queue.push_back(winner as u32);
                            }
                            v = self.find(v);
                            continue 'rescan;
                        }
                    }
                }
                break;
            }
        }
        self.folds
    }

    /// After folding a two-loop bouquet: is the result one vertex with one
    /// loop per generator?
    pub(crate) fn folded_is_rose(&mut self) -> bool {
        let mut reps = 0;
        for v in 0..self.n {
            if self.find(v) == v {
                reps += 1;
                if reps > 1 {
                    return false;
                }
            }
        }
        if reps != 1 {
            return false;
        }
        self.label_counts.clear();
        self.label_counts.resize(self.rank, 0);
        let mut live = 0;
        for e in 0..self.e_alive.len() {
            if self.e_alive[e] {
                live += 1;
                self.label_counts[(self.e_label[e] - 1) as usize] += 1;
            }
        }
        live == self.rank && self.label_counts.iter().all(|&c| c == 1)
    }

    pub(crate) fn extract(&mut self, basepoint: VertexId) -> RawGraph {
        let mut new_id = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if self.find(v) == v {
                new_id[v] = next;
                next += 1;
            }
        }
        let mut edges = Vec::with_capacity(self.e_alive.len());
        for e in 0..self.e_alive.len() {
            if self.e_alive[e] {
                let o = self.find(self.e_origin[e] as usize);
                let t = self.find(self.e_terminus[e] as usize);
                edges.push(Edge {
                    origin: new_id[o],
                    label: self.e_label[e],
                    terminus: new_id[t],
                });
            }
        }
        edges.sort_unstable();
        let bp = self.find(basepoint);
        RawGraph::new(self.rank as u32, next, new_id[bp], edges)
            .expect("folded graph is well formed")
    }
}

/// Fold to the fixpoint in a fixed deterministic order.
pub fn fold_all(g: &RawGraph) -> RawGraph {
    fold_all_with(g, &mut Workspace::new())
}

/// [`fold_all`] with caller-provided scratch space.
pub fn fold_all_with(g: &RawGraph, ws: &mut Workspace) -> RawGraph {
    fold_all_counting(g, ws).0
}

pub(crate) fn fold_all_counting(g: &RawGraph, ws: &mut Workspace) -> (RawGraph, usize) {
    ws.load_graph(g);
    let folds = ws.run_fold();
    (ws.extract(g.basepoint()), folds)
}

/// Fold to the fixpoint choosing each merge uniformly at random among the
/// currently foldable pairs (seeded, reproducible). Exists to exercise
/// confluence; quadratic, intended for small graphs.
pub fn fold_all_seeded(g: &RawGraph, seed: u64) -> RawGraph {
    let mut rng = SplitMix64::new(seed);
    let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let edges: Vec<Edge> = g.edges().to_vec();
    let mut alive = vec![true; edges.len()];
    loop {
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for i in 0..edges.len() {
            if !alive[i] {
                continue;
            }
            for j in (i + 1)..edges.len() {
                if !alive[j] || edges[i].label != edges[j].label {
                    continue;
                }
                let (oi, ti) = (find(&mut parent, edges[i].origin), find(&mut parent, edges[i].terminus));
                let (oj, tj) = (find(&mut parent, edges[j].origin), find(&mut parent, edges[j].terminus));
                if oi == oj || ti == tj {
                    candidates.push((i, j));
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        let (i, j) = candidates[(rng.next() % candidates.len() as u64) as usize];
        let (oi, ti) = (find(&mut parent, edges[i].origin), find(&mut parent, edges[i].terminus));
        let (oj, tj) = (find(&mut parent, edges[j].origin), find(&mut parent, edges[j].terminus));
        if oi == oj {
            let (a, b) = (find(&mut parent, ti), find(&mut parent, tj));
            parent[a] = b;
        } else {
            let (a, b) = (find(&mut parent, oi), find(&mut parent, oj));
            parent[a] = b;
        }
        alive[j] = false;
    }
    let mut new_id = vec![usize::MAX; g.num_vertices()];
    let mut next = 0;
    for v in 0..g.num_vertices() {
        if find(&mut parent, v) == v {
            new_id[v] = next;
            next += 1;
        }
    }
    let mut out_edges = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if alive[i] {
            out_edges.push(Edge {
                origin: new_id[find(&mut parent, e.origin)],
                label: e.label,
                terminus: new_id[find(&mut parent, e.terminus)],
            });
        }
    }
    out_edges.sort_unstable();
    let bp = new_id[find(&mut parent, g.basepoint())];
    RawGraph::new(g.rank(), next, bp, out_edges).expect("folded graph is well formed")
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn new(seed: u64) -> SplitMix64 {
        SplitMix64(seed.wrapping_add(0x9e3779b97f4a7c15))
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}
