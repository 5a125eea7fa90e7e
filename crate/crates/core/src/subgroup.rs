//! Subgroup-level semantics over core graphs: membership, the "appears"
//! relation, X-covering, free-factor embedding witnesses, and the finite set
//! of principal overgroups obtained from vertex partitions.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{
    compute_morphism, quotient, to_core, CoreGraph, GraphError, RawGraph, VertexId,
};
use crate::words::{Letter, Word, WordError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupError {
    Word(WordError),
    Graph(GraphError),
    /// Overgroup enumeration refused: core graph larger than the cap.
    TooManyVertices { vertices: usize, cap: usize },
}

impl fmt::Display for SubgroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupError::Word(e) => write!(f, "{e}"),
            SubgroupError::Graph(e) => write!(f, "{e}"),
            SubgroupError::TooManyVertices { vertices, cap } => write!(
                f,
                "core graph has {vertices} vertices, above the partition cap {cap}"
            ),
        }
    }
}

impl core::error::Error for SubgroupError {}

impl From<WordError> for SubgroupError {
    fn from(e: WordError) -> Self {
        SubgroupError::Word(e)
    }
}

impl From<GraphError> for SubgroupError {
    fn from(e: GraphError) -> Self {
        SubgroupError::Graph(e)
    }
}

/// A finitely generated subgroup of `F(rank)`, held as a generator list.
/// The list may be redundant; the core graph is the canonical object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    rank: u32,
    generators: Vec<Word>,
}

impl Subgroup {
    pub fn new(rank: u32, generators: Vec<Word>) -> Result<Subgroup, SubgroupError> {
        for g in &generators {
            if g.rank() != rank {
                return Err(WordError::RankMismatch { left: rank, right: g.rank() }.into());
            }
        }
        Ok(Subgroup { rank, generators })
    }

    /// Parse a list of generator words in the text syntax.
    pub fn parse(rank: u32, texts: &[&str]) -> Result<Subgroup, SubgroupError> {
        let generators = texts
            .iter()
            .map(|t| Word::parse(t, rank))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subgroup { rank, generators })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    /// The subgroup generated by the current generators plus `w`.
    pub fn extended(&self, w: &Word) -> Result<Subgroup, SubgroupError> {
        if w.rank() != self.rank {
            return Err(WordError::RankMismatch { left: self.rank, right: w.rank() }.into());
        }
        let mut generators = self.generators.clone();
        generators.push(w.clone());
        Ok(Subgroup { rank: self.rank, generators })
    }

    /// The Stallings core graph: fold and trim a bouquet of generator loops.
    /// Independent of the generator list chosen for the same subgroup.
    pub fn core_graph(&self) -> CoreGraph {
        let bouquet = RawGraph::bouquet(self.rank, &self.generators)
            .expect("generators validated at construction");
        to_core(&bouquet)
    }
}

/// `w` is an element of the subgroup whose core graph is `core`: tracing `w`
/// from the basepoint consumes every letter and returns to the basepoint.
pub fn is_member(core: &CoreGraph, w: &Word) -> Result<bool, SubgroupError> {
    if w.rank() != core.rank() {
        return Err(WordError::RankMismatch { left: core.rank(), right: w.rank() }.into());
    }
    Ok(core.trace(core.basepoint(), w) == Some(core.basepoint()))
}

/// One step of a path, in the direction the witnessed word is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub from: VertexId,
    pub letter: Letter,
    pub to: VertexId,
}

/// Witness that a word appears in a graph: `w = p1 · p2` with no
/// cancellation, `p1` a path from the basepoint and `p2` a path into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppearWitness {
    /// Number of letters carried by `p1`.
    pub split: usize,
    pub prefix_path: Vec<PathStep>,
    pub suffix_path: Vec<PathStep>,
}

fn trace_from(core: &CoreGraph, start: VertexId, letters: &[Letter]) -> Option<Vec<PathStep>> {
    let mut steps = Vec::with_capacity(letters.len());
    let mut cur = start;
    for &l in letters {
        let (next, _) = core.step(cur, l)?;
        steps.push(PathStep { from: cur, letter: l, to: next });
        cur = next;
    }
    Some(steps)
}

fn trace_into(core: &CoreGraph, end: VertexId, letters: &[Letter]) -> Option<Vec<PathStep>> {
    let mut steps = Vec::with_capacity(letters.len());
    let mut cur = end;
    for &l in letters.iter().rev() {
        let (prev, _) = core.step(cur, l.inverse())?;
        steps.push(PathStep { from: prev, letter: l, to: cur });
        cur = prev;
    }
    steps.reverse();
    Some(steps)
}

/// Search all `|w| + 1` splits for an appearance of `w` in `core`, returning
/// the witness with the shortest `p1` (splits are tried in ascending order).
pub fn appears(w: &Word, core: &CoreGraph) -> Result<Option<AppearWitness>, SubgroupError> {
    if w.rank() != core.rank() {
        return Err(WordError::RankMismatch { left: core.rank(), right: w.rank() }.into());
    }
    let bp = core.basepoint();
    for split in 0..=w.len() {
        let Some(prefix_path) = trace_from(core, bp, &w.letters()[..split]) else {
            // longer prefixes of w can only fail earlier
            break;
        };
        if let Some(suffix_path) = trace_into(core, bp, &w.letters()[split..]) {
            return Ok(Some(AppearWitness { split, prefix_path, suffix_path }));
        }
    }
    Ok(None)
}

/// Verdict of the X-cover test. Sweeps feed arbitrary pairs, so "H is not
/// even a subgroup of J" is a result, not an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cover {
    NotSubgroup,
    Covers,
    NotCovers,
}

/// Does `h` X-cover `j`: the morphism `Γ(h) → Γ(j)` exists and is onto
/// (vertices and edges)?
pub fn x_covers(h: &Subgroup, j: &Subgroup) -> Result<Cover, SubgroupError> {
    x_covers_cores(&h.core_graph(), &j.core_graph())
}

/// [`x_covers`] on already-computed core graphs.
pub fn x_covers_cores(h: &CoreGraph, j: &CoreGraph) -> Result<Cover, SubgroupError> {
    match compute_morphism(h, j)? {
        None => Ok(Cover::NotSubgroup),
        Some(m) if m.is_onto() => Ok(Cover::Covers),
        Some(_) => Ok(Cover::NotCovers),
    }
}

/// Does `h` X-cover the simple extension `<h, w>`? Decided by appearance of
/// `w` in `Γ(h)` alone; the morphism route is the independent cross-check.
pub fn covers_simple(h: &Subgroup, w: &Word) -> Result<bool, SubgroupError> {
    Ok(appears(w, &h.core_graph())?.is_some())
}

/// `Γ(h)` embeds as a subgraph of `Γ(j)`: the morphism exists and is
/// injective. A sufficient (not necessary) certificate that `h` is a free
/// factor of `j`. Returns false when `h` is not a subgroup of `j` at all.
pub fn embeds_as_subgraph(h: &Subgroup, j: &Subgroup) -> Result<bool, SubgroupError> {
    match compute_morphism(&h.core_graph(), &j.core_graph())? {
        Some(m) => Ok(m.is_injective()),
        None => Ok(false),
    }
}

pub const DEFAULT_OVERGROUP_VERTEX_CAP: usize = 10;

/// The X-principal overgroups of `h`: every subgroup whose core graph is an
/// onto image of `Γ(h)`, computed by quotienting `Γ(h)` by every vertex
/// partition and re-folding. Includes `h` itself (the identity partition).
/// Results are deduplicated by canonical form and sorted.
pub fn principal_overgroups(
    h: &Subgroup,
    max_vertices: usize,
) -> Result<Vec<CoreGraph>, SubgroupError> {
    principal_overgroups_of_core(&h.core_graph(), max_vertices)
}

pub fn principal_overgroups_of_core(
    core: &CoreGraph,
    max_vertices: usize,
) -> Result<Vec<CoreGraph>, SubgroupError> {
    let n = core.num_vertices();
    if n > max_vertices {
        return Err(SubgroupError::TooManyVertices { vertices: n, cap: max_vertices });
    }
    let mut seen = BTreeMap::new();
    let mut rgs = RestrictedGrowth::new(n);
    while let Some(blocks) = rgs.next_partition() {
        let q = quotient(core, &blocks).expect("partition enumerator emits exact covers");
        let folded = to_core(&q);
        seen.entry(folded.canonical_form()).or_insert(folded);
    }
    Ok(seen.into_values().collect())
}

/// Set partitions of `{0, …, n-1}` enumerated by restricted growth strings
/// in lexicographic order (the identity partition comes first).
pub(crate) struct RestrictedGrowth {
    n: usize,
    rgs: Vec<usize>,
    started: bool,
}

impl RestrictedGrowth {
    pub(crate) fn new(n: usize) -> RestrictedGrowth {
        RestrictedGrowth { n, rgs: vec![0; n], started: false }
    }

    pub(crate) fn next_partition(&mut self) -> Option<Vec<Vec<VertexId>>> {
        if self.n == 0 {
            // single empty partition
            if self.started {
                return None;
            }
            self.started = true;
            return Some(Vec::new());
        }
        if !self.started {
            self.started = true;
        } else if !self.increment() {
            return None;
        }
        let blocks_count = self.rgs.iter().max().unwrap() + 1;
        let mut blocks = vec![Vec::new(); blocks_count];
        for (v, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(v);
        }
        Some(blocks)
    }

    fn increment(&mut self) -> bool {
        for i in (1..self.n).rev() {
            let cap = self.rgs[..i].iter().max().unwrap() + 1;
            if self.rgs[i] < cap {
                self.rgs[i] += 1;
                for j in i + 1..self.n {
                    self.rgs[j] = 0;
                }
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(rank: u32, gens: &[&str]) -> Subgroup {
        Subgroup::parse(rank, gens).unwrap()
    }

    fn w2(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn core_graph_examples() {
        // the two-generator subgroup from the running example: 4 vertices, 5 edges
        let fig1 = sg(2, &["aBa", "AAb"]).core_graph();
        assert_eq!((fig1.num_vertices(), fig1.num_edges()), (4, 5));
        assert_eq!(fig1.cycle_rank(), 2);

        let a = sg(2, &["a"]).core_graph();
        assert_eq!((a.num_vertices(), a.num_edges()), (1, 1));

        let aabb = sg(2, &["aabb"]).core_graph();
        assert_eq!((aabb.num_vertices(), aabb.num_edges()), (4, 4));
    }

    #[test]
    fn membership_examples() {
        let aabb = sg(2, &["aabb"]).core_graph();
        assert!(is_member(&aabb, &w2("aabb")).unwrap());
        assert!(!is_member(&aabb, &w2("a")).unwrap());
        assert!(is_member(&aabb, &Word::identity(2)).unwrap());

        let fig1 = sg(2, &["aBa", "AAb"]).core_graph();
        assert!(is_member(&fig1, &w2("aBa")).unwrap());
        assert!(is_member(&fig1, &w2("AAb")).unwrap());

        let three = Word::parse("c", 3).unwrap();
        assert!(is_member(&fig1, &three).is_err());
    }

    #[test]
    fn appears_triple_in_fig1() {
        let fig1 = sg(2, &["aBa", "AAb"]).core_graph();
        assert!(appears(&w2("aaa"), &fig1).unwrap().is_some());
        assert!(appears(&w2("aabA"), &fig1).unwrap().is_some());
        assert!(appears(&w2("aabb"), &fig1).unwrap().is_none());
    }

    #[test]
    fn appears_returns_shortest_prefix_witness() {
        let aabb = sg(2, &["aabb"]).core_graph();
        let wit = appears(&w2("ab"), &aabb).unwrap().unwrap();
        assert_eq!(wit.split, 1);
        assert_eq!(wit.prefix_path.len(), 1);
        assert_eq!(wit.suffix_path.len(), 1);
        assert_eq!(wit.prefix_path[0].from, aabb.basepoint());
        assert_eq!(wit.suffix_path[0].to, aabb.basepoint());

        // brute-force all splits: only split 1 works for "ab"
        for split in 0..=2 {
            let p1 = trace_from(&aabb, aabb.basepoint(), &w2("ab").letters()[..split]);
            let p2 = trace_into(&aabb, aabb.basepoint(), &w2("ab").letters()[split..]);
            assert_eq!(p1.is_some() && p2.is_some(), split == 1, "split {split}");
        }

        // the empty word appears via empty paths
        let wit = appears(&Word::identity(2), &aabb).unwrap().unwrap();
        assert_eq!((wit.split, wit.prefix_path.len(), wit.suffix_path.len()), (0, 0, 0));
    }

    #[test]
    fn witness_paths_spell_the_word() {
        let fig1 = sg(2, &["aBa", "AAb"]).core_graph();
        let word = w2("aabA");
        let wit = appears(&word, &fig1).unwrap().unwrap();
        let letters: Vec<_> = wit
            .prefix_path
            .iter()
            .chain(wit.suffix_path.iter())
            .map(|s| s.letter)
            .collect();
        assert_eq!(letters, word.letters());
    }

    #[test]
    fn x_cover_examples() {
        let h = sg(2, &["aabb"]);
        let j = sg(2, &["aabb", "ab"]);
        assert_eq!(x_covers(&h, &j).unwrap(), Cover::Covers);
        assert_eq!(x_covers(&h, &h).unwrap(), Cover::Covers);
        assert_eq!(x_covers(&sg(2, &["a"]), &sg(2, &["b"])).unwrap(), Cover::NotSubgroup);

        // rank 3: the cover fails
        let h3 = Subgroup::parse(3, &["aaBccb"]).unwrap();
        let j3 = Subgroup::parse(3, &["aaBccb", "aBcb"]).unwrap();
        assert_eq!(x_covers(&h3, &j3).unwrap(), Cover::NotCovers);
    }

    #[test]
    fn covers_simple_examples() {
        assert!(covers_simple(&sg(2, &["aabb"]), &w2("ab")).unwrap());
        assert!(covers_simple(&sg(2, &["a"]), &w2("a")).unwrap());
        let h3 = Subgroup::parse(3, &["aaBccb"]).unwrap();
        assert!(!covers_simple(&h3, &Word::parse("aBcb", 3).unwrap()).unwrap());
    }

    #[test]
    fn embeds_examples() {
        assert!(embeds_as_subgraph(&sg(2, &["a"]), &sg(2, &["a", "b"])).unwrap());
        assert!(!embeds_as_subgraph(&sg(2, &["aabb"]), &sg(2, &["aabb", "ab"])).unwrap());
        let h3 = Subgroup::parse(3, &["aaBccb"]).unwrap();
        let j3 = Subgroup::parse(3, &["aaBccb", "aBcb"]).unwrap();
        assert!(embeds_as_subgraph(&h3, &j3).unwrap());
    }

    #[test]
    fn restricted_growth_counts_match_bell_numbers() {
        for (n, bell) in [(0usize, 1usize), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            let mut it = RestrictedGrowth::new(n);
            let mut count = 0;
            while it.next_partition().is_some() {
                count += 1;
            }
            assert_eq!(count, bell, "n = {n}");
        }
    }

    #[test]
    fn overgroups_of_single_relator() {
        let h = sg(2, &["aabb"]);
        let overs = principal_overgroups(&h, 10).unwrap();
        let j = sg(2, &["aabb", "ab"]).core_graph().canonical_form();
        assert!(overs.iter().any(|g| g.canonical_form() == j));
        let own = h.core_graph().canonical_form();
        assert!(overs.iter().any(|g| g.canonical_form() == own));
        // every overgroup is genuinely covered
        for over in &overs {
            assert_eq!(x_covers_cores(&h.core_graph(), over).unwrap(), Cover::Covers);
        }
    }

    #[test]
    fn overgroups_of_rose_is_single() {
        let f2 = sg(2, &["a", "b"]);
        let overs = principal_overgroups(&f2, 10).unwrap();
        assert_eq!(overs.len(), 1);
        assert!(overs[0].is_rose());
    }

    #[test]
    fn overgroup_cap_is_enforced() {
        let h = sg(2, &["aabb"]);
        assert!(matches!(
            principal_overgroups(&h, 3),
            Err(SubgroupError::TooManyVertices { vertices: 4, cap: 3 })
        ));
    }
}
