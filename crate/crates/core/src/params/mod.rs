//! Structural parameters and decompositions consumed by the FPT solvers.

mod cexpr;
mod md;

pub use cexpr::{CExpression, CNode, LabeledGraph};
pub use md::{modular_decomposition, MdNode, ModularDecomposition};

use crate::graph::{twin_classes, TwinPartition, Vertex, WeightedGraph};

/// Number of twin classes, with the classes themselves.
pub fn neighborhood_diversity(g: &WeightedGraph) -> (usize, TwinPartition) {
    let classes = twin_classes(g);
    (classes.len(), classes)
}

/// Smallest induced P3 `a - center - c` in the graph with `removed`
/// vertices deleted, scanning centers in id order.
fn find_induced_p3(g: &WeightedGraph, removed: &[bool]) -> Option<[Vertex; 3]> {
    for center in g.vertices().filter(|&v| !removed[v]) {
        let nb: Vec<Vertex> = g
            .neighbors(center)
            .iter()
            .copied()
            .filter(|&u| !removed[u])
            .collect();
        for (i, &a) in nb.iter().enumerate() {
            if let Some(&c) = nb[i + 1..].iter().find(|&&c| !g.has_edge(a, c)) {
                return Some([a, center, c]);
            }
        }
    }
    None
}

/// True if `g - d` is a disjoint union of cliques.
pub fn is_cluster_deletion_set(g: &WeightedGraph, d: &[Vertex]) -> bool {
    find_induced_p3(g, &g.mask_of(d)).is_none()
}

/// A cluster vertex deletion set of size at most `k`, if one exists.
///
/// Branches on the first induced P3, deleting its center first and then the
/// two endpoints.
pub fn cluster_vertex_deletion(g: &WeightedGraph, k: usize) -> Option<Vec<Vertex>> {
    fn go(g: &WeightedGraph, removed: &mut Vec<bool>, budget: usize) -> bool {
        let Some([a, center, c]) = find_induced_p3(g, removed) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for v in [center, a, c] {
            removed[v] = true;
            if go(g, removed, budget - 1) {
                return true;
            }
            removed[v] = false;
        }
        false
    }
    let mut removed = vec![false; g.vertex_count()];
    go(g, &mut removed, k).then(|| g.vertices().filter(|&v| removed[v]).collect())
}

/// Smallest cluster vertex deletion set, trying `k = 0, 1, ..., max_k`.
pub fn minimum_cluster_vertex_deletion(g: &WeightedGraph, max_k: usize) -> Option<Vec<Vertex>> {
    (0..=max_k).find_map(|k| cluster_vertex_deletion(g, k))
}

/// True if every component of `g - cover` consists of pairwise twins of `g`.
pub fn is_twin_cover(g: &WeightedGraph, cover: &[Vertex]) -> bool {
    let mask = g.mask_of(cover);
    non_twin_edge(g, &mask).is_none()
}

/// First edge of `g - removed` whose endpoints are not twins in `g`.
///
/// Twinship is transitive, so no such edge means every component is a set of
/// mutual (true) twins.
fn non_twin_edge(g: &WeightedGraph, removed: &[bool]) -> Option<(Vertex, Vertex)> {
    g.edges()
        .find(|&(u, v)| !removed[u] && !removed[v] && !g.are_twins(u, v))
}

/// A twin cover of size at most `k`, if one exists.
///
/// Branches on the first edge whose endpoints are not twins in `g`; the
/// endpoint with more surviving neighbors is tried first (smaller id on ties).
pub fn twin_cover(g: &WeightedGraph, k: usize) -> Option<Vec<Vertex>> {
    fn surviving_degree(g: &WeightedGraph, removed: &[bool], v: Vertex) -> usize {
        g.neighbors(v).iter().filter(|&&u| !removed[u]).count()
    }
    fn go(g: &WeightedGraph, removed: &mut Vec<bool>, budget: usize) -> bool {
        let Some((u, v)) = non_twin_edge(g, removed) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        let order = if surviving_degree(g, removed, v) > surviving_degree(g, removed, u) {
            [v, u]
        } else {
            [u, v]
        };
        for x in order {
            removed[x] = true;
            if go(g, removed, budget - 1) {
                return true;
            }
            removed[x] = false;
        }
        false
    }
    let mut removed = vec![false; g.vertex_count()];
    go(g, &mut removed, k).then(|| g.vertices().filter(|&v| removed[v]).collect())
}

/// Smallest twin cover, trying `k = 0, 1, ..., max_k`.
pub fn minimum_twin_cover(g: &WeightedGraph, max_k: usize) -> Option<Vec<Vertex>> {
    (0..=max_k).find_map(|k| twin_cover(g, k))
}
