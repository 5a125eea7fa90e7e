//! The basepoint-, direction- and label-preserving map between two core
//! graphs. Because both graphs are folded, the map is determined by
//! propagation from the basepoint: it exists iff propagation never hits a
//! missing edge, and it is unique.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{CoreGraph, GraphError, VertexId};

/// A graph morphism `src → dst` together with surjectivity/injectivity data
/// for its vertex and edge maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    vertex_map: Vec<VertexId>,
    edge_map: Vec<usize>,
    onto_vertices: bool,
    onto_edges: bool,
    injective_vertices: bool,
    injective_edges: bool,
}

impl Morphism {
    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    /// Image edge index in `dst` for each edge of `src`.
    pub fn edge_map(&self) -> &[usize] {
        &self.edge_map
    }

    /// Surjective on both vertices and edges.
    pub fn is_onto(&self) -> bool {
        self.onto_vertices && self.onto_edges
    }

    /// Injective on both vertices and edges.
    pub fn is_injective(&self) -> bool {
        self.injective_vertices && self.injective_edges
    }
}

/// Compute the unique morphism `src → dst`, or `None` when there is none.
pub fn compute_morphism(src: &CoreGraph, dst: &CoreGraph) -> Result<Option<Morphism>, GraphError> {
    if src.rank() != dst.rank() {
        return Err(GraphError::RankMismatch { left: src.rank(), right: dst.rank() });
    }
    let mut vertex_map = vec![usize::MAX; src.num_vertices()];
    let mut edge_map = vec![usize::MAX; src.num_edges()];
    vertex_map[src.basepoint()] = dst.basepoint();
    let mut queue = VecDeque::new();
    queue.push_back(src.basepoint());
    // src is connected and folded, so a BFS from the basepoint reaches every
    // vertex and fixes the image of every edge.
    while let Some(v) = queue.pop_front() {
        let image = vertex_map[v];
        for (src_e_idx, e) in src.edges().iter().enumerate() {
            let (near, far, far_is_terminus) = if e.origin == v {
                (e.origin, e.terminus, true)
            } else if e.terminus == v {
                (e.terminus, e.origin, false)
            } else {
                continue;
            };
            debug_assert_eq!(vertex_map[near], image);
            let letter = crate::words::Letter::new(e.label, far_is_terminus);
            let Some((far_image, dst_e_idx)) = dst.step(image, letter) else {
                return Ok(None);
            };
            edge_map[src_e_idx] = dst_e_idx;
            if vertex_map[far] == usize::MAX {
                vertex_map[far] = far_image;
                queue.push_back(far);
            } else if vertex_map[far] != far_image {
                // two propagation routes disagree: no morphism
                return Ok(None);
            }
        }
    }
    debug_assert!(vertex_map.iter().all(|&m| m != usize::MAX));
    debug_assert!(edge_map.iter().all(|&m| m != usize::MAX));

    let mut v_hit = vec![0usize; dst.num_vertices()];
    for &m in &vertex_map {
        v_hit[m] += 1;
    }
    let mut e_hit = vec![0usize; dst.num_edges()];
    for &m in &edge_map {
        e_hit[m] += 1;
    }
    Ok(Some(Morphism {
        onto_vertices: v_hit.iter().all(|&c| c > 0),
        onto_edges: e_hit.iter().all(|&c| c > 0),
        injective_vertices: v_hit.iter().all(|&c| c <= 1),
        injective_edges: e_hit.iter().all(|&c| c <= 1),
        vertex_map,
        edge_map,
    }))
}
