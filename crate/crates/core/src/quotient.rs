//! Binary-weight solvers that enumerate unions of twin classes.
//!
//! An irredundant set takes all or none of every twin class, so for
//! neighborhood diversity `nd` only `2^nd` candidates need to be evaluated,
//! whatever the weights are. For a twin cover, each twin clique outside the
//! cover is first contracted to a single vertex carrying its weight.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{evaluate, strip_redundant, twin_classes, Solution, Vertex, WeightedGraph};
use crate::params::is_twin_cover;
use crate::{better, Limits};

/// Optimal solution by enumerating unions of twin classes.
pub fn wvi_nd(g: &WeightedGraph) -> Result<Solution> {
    wvi_nd_with(g, &Limits::default())
}

pub fn wvi_nd_with(g: &WeightedGraph, limits: &Limits) -> Result<Solution> {
    let classes = twin_classes(g).classes;
    Error::check_cap(
        "neighborhood diversity",
        classes.len(),
        limits.twin_classes.min(63),
    )?;
    let count = classes.len();
    let best = (0u64..1 << count)
        .into_par_iter()
        .map(|mask| {
            let s: Vec<Vertex> = (0..count)
                .filter(|&i| mask >> i & 1 == 1)
                .flat_map(|i| classes[i].iter().copied())
                .collect();
            evaluate(g, &strip_redundant(g, &s))
        })
        .reduce_with(better)
        .unwrap_or_else(|| evaluate(g, &[]));
    Ok(best)
}

/// Optimal solution given a twin cover of `g`.
pub fn wvi_tc(g: &WeightedGraph, cover: &[Vertex]) -> Result<Solution> {
    wvi_tc_with(g, cover, &Limits::default())
}

/// The graph with every component of `g - cover` merged into one vertex.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: WeightedGraph,
    /// Original vertices behind each contracted vertex.
    pub members: Vec<Vec<Vertex>>,
}

impl Contraction {
    /// Original vertices of a set of contracted vertices, sorted.
    pub fn expand(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = set
            .iter()
            .flat_map(|&x| self.members[x].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Contracts the twin cliques outside a verified twin cover. Cover vertices
/// come first (in id order), then one vertex per component of `g - cover`.
pub fn contract_twin_cliques(g: &WeightedGraph, cover: &[Vertex]) -> Result<Contraction> {
    if cover.iter().any(|&v| v >= g.vertex_count()) {
        return Err(Error::precondition(
            "twin cover names a vertex out of range",
        ));
    }
    if !is_twin_cover(g, cover) {
        return Err(Error::precondition("the given set is not a twin cover"));
    }
    let mut cover: Vec<Vertex> = cover.to_vec();
    cover.sort_unstable();
    cover.dedup();
    let mut members: Vec<Vec<Vertex>> = cover.iter().map(|&v| vec![v]).collect();
    members.extend(crate::connected_components(g, &cover));
    let mut owner = vec![0usize; g.vertex_count()];
    for (x, group) in members.iter().enumerate() {
        for &v in group {
            owner[v] = x;
        }
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (owner[u].min(owner[v]), owner[u].max(owner[v])))
        .filter(|(a, b)| a != b)
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let weights = members.iter().map(|m| g.weight_of(m)).collect();
    let graph = WeightedGraph::new(members.len(), &edges, weights)?;
    Ok(Contraction { graph, members })
}

pub fn wvi_tc_with(g: &WeightedGraph, cover: &[Vertex], limits: &Limits) -> Result<Solution> {
    let contraction = contract_twin_cliques(g, cover)?;
    let inner = wvi_nd_with(&contraction.graph, limits)?;
    let sol = evaluate(g, &contraction.expand(&inner.deleted));
    debug_assert_eq!(sol.objective, inner.objective);
    Ok(sol)
}
