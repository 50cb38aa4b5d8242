//! Vertex-weighted simple graphs and the machinery every solver shares:
//! components after deletion, the objective, twin classes, redundancy and
//! the universal-vertex peel.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Vertex identifier. Vertices are always `0..n`.
pub type Vertex = usize;

/// Simple undirected graph with positive integer vertex weights.
///
/// Unit weights give the unweighted view. The total weight is cached and is
/// guaranteed to fit in a `u64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<Vertex>>,
    weights: Vec<u64>,
    total_weight: u64,
}

impl WeightedGraph {
    /// Builds a graph from an edge list and per-vertex weights.
    ///
    /// Duplicate edges are rejected, as are self-loops, endpoints out of
    /// range, zero weights and a total weight that overflows `u64`.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)], weights: Vec<u64>) -> Result<Self> {
        if weights.len() != n {
            return Err(Error::InvalidGraph(format!(
                "{} weights given for {n} vertices",
                weights.len()
            )));
        }
        if let Some(v) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidGraph(format!("vertex {v} has weight 0")));
        }
        let total_weight = weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .ok_or_else(|| Error::InvalidGraph("total weight overflows 64 bits".into()))?;
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u},{v}}} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("parallel edge at vertex {v}")));
            }
        }
        Ok(WeightedGraph {
            adjacency,
            weights,
            total_weight,
        })
    }

    /// Unit-weight graph.
    pub fn unit(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::new(n, edges, vec![1; n])
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn weight(&self, v: Vertex) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn is_unit_weight(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Sum of the weights of `vertices`.
    pub fn weight_of(&self, vertices: &[Vertex]) -> u64 {
        vertices.iter().map(|&v| self.weights[v]).sum()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Same vertex set and edges, every weight replaced by 1.
    pub fn unweighted(&self) -> WeightedGraph {
        let n = self.vertex_count();
        WeightedGraph {
            adjacency: self.adjacency.clone(),
            weights: vec![1; n],
            total_weight: n as u64,
        }
    }

    /// Same edges with new weights.
    pub fn with_weights(&self, weights: Vec<u64>) -> Result<WeightedGraph> {
        let edges: Vec<_> = self.edges().collect();
        WeightedGraph::new(self.vertex_count(), &edges, weights)
    }

    /// Subgraph induced by `keep` (in the given order); vertex `i` of the
    /// result is `keep[i]` of `self`.
    pub fn induced(&self, keep: &[Vertex]) -> WeightedGraph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adjacency: Vec<Vec<Vertex>> = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<Vertex> = self.adjacency[v]
                    .iter()
                    .filter_map(|&u| (index[u] != usize::MAX).then_some(index[u]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        let weights: Vec<u64> = keep.iter().map(|&v| self.weights[v]).collect();
        let total_weight = weights.iter().sum();
        WeightedGraph {
            adjacency,
            weights,
            total_weight,
        }
    }

    /// `self - removed`, with the list of surviving original ids.
    pub fn remove_vertices(&self, removed: &[Vertex]) -> (WeightedGraph, Vec<Vertex>) {
        let mask = self.mask_of(removed);
        let keep: Vec<Vertex> = self.vertices().filter(|&v| !mask[v]).collect();
        (self.induced(&keep), keep)
    }

    /// Adds a vertex adjacent to every existing vertex; its id is `n`.
    pub fn with_universal_vertex(&self, weight: u64) -> Result<WeightedGraph> {
        let n = self.vertex_count();
        let mut edges: Vec<_> = self.edges().collect();
        edges.extend((0..n).map(|v| (v, n)));
        let mut weights = self.weights.clone();
        weights.push(weight);
        WeightedGraph::new(n + 1, &edges, weights)
    }

    pub(crate) fn mask_of(&self, set: &[Vertex]) -> Vec<bool> {
        let mut mask = vec![false; self.vertex_count()];
        for &v in set {
            mask[v] = true;
        }
        mask
    }

    /// True if the neighborhood of `v` is a clique.
    pub fn is_simplicial(&self, v: Vertex) -> bool {
        let nb = &self.adjacency[v];
        nb.iter()
            .enumerate()
            .all(|(i, &a)| nb[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// True if `u` and `v` have the same neighborhood apart from each other.
    pub fn are_twins(&self, u: Vertex, v: Vertex) -> bool {
        let a = self.adjacency[u].iter().filter(|&&x| x != v);
        let b = self.adjacency[v].iter().filter(|&&x| x != u);
        a.eq(b)
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self, &[]).len() <= 1
    }
}

/// A deletion set together with its objective value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    /// Sorted deleted vertices.
    pub deleted: Vec<Vertex>,
    /// `deleted_weight + max_component_weight`.
    pub objective: u64,
    pub max_component_weight: u64,
    pub deleted_weight: u64,
}

/// Components of `g - removed`, each sorted, listed by smallest vertex.
pub fn connected_components(g: &WeightedGraph, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
    components_masked(g, &g.mask_of(removed))
}

pub(crate) fn components_masked(g: &WeightedGraph, removed: &[bool]) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut seen = removed.to_vec();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Objective of deleting `s`: `weight(s)` plus the heaviest component of
/// `g - s` (zero when nothing survives).
pub fn evaluate(g: &WeightedGraph, s: &[Vertex]) -> Solution {
    let mut deleted = s.to_vec();
    deleted.sort_unstable();
    deleted.dedup();
    let mask = g.mask_of(&deleted);
    let deleted_weight = g.weight_of(&deleted);
    let max_component_weight = components_masked(g, &mask)
        .iter()
        .map(|c| g.weight_of(c))
        .max()
        .unwrap_or(0);
    Solution {
        deleted,
        objective: deleted_weight + max_component_weight,
        max_component_weight,
        deleted_weight,
    }
}

/// Partition of the vertices into maximal twin classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    /// Each class sorted; classes ordered by smallest member.
    pub classes: Vec<Vec<Vertex>>,
    pub class_of: Vec<usize>,
}

impl TwinPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// The twin relation is an equivalence: a vertex with a false twin (same open
/// neighborhood) cannot also have a true twin (same closed neighborhood), so
/// grouping by open neighborhood first and closed neighborhood second gives
/// the maximal classes.
pub fn twin_classes(g: &WeightedGraph) -> TwinPartition {
    let n = g.vertex_count();
    let mut open: HashMap<&[Vertex], Vec<Vertex>> = HashMap::new();
    for v in 0..n {
        open.entry(g.neighbors(v)).or_default().push(v);
    }
    let mut closed: HashMap<Vec<Vertex>, Vec<Vertex>> = HashMap::new();
    for v in 0..n {
        let mut key = g.neighbors(v).to_vec();
        let pos = key.partition_point(|&u| u < v);
        key.insert(pos, v);
        closed.entry(key).or_default().push(v);
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..n {
        if class_of[v] != usize::MAX {
            continue;
        }
        let by_open = &open[g.neighbors(v)];
        let members = if by_open.len() > 1 {
            by_open.clone()
        } else {
            let mut key = g.neighbors(v).to_vec();
            let pos = key.partition_point(|&u| u < v);
            key.insert(pos, v);
            closed[&key].clone()
        };
        let id = classes.len();
        for &u in &members {
            class_of[u] = id;
        }
        classes.push(members);
    }
    TwinPartition { classes, class_of }
}

/// True iff at most one component of `g - s` contains a neighbor of `v`.
pub fn is_redundant(g: &WeightedGraph, s: &[Vertex], v: Vertex) -> Result<bool> {
    if !s.contains(&v) {
        return Err(Error::precondition(format!(
            "vertex {v} is not in the deletion set"
        )));
    }
    let mask = g.mask_of(s);
    Ok(touched_components(g, &mask, v) <= 1)
}

fn touched_components(g: &WeightedGraph, removed: &[bool], v: Vertex) -> usize {
    let mut label = vec![usize::MAX; g.vertex_count()];
    for (i, comp) in components_masked(g, removed).iter().enumerate() {
        for &u in comp {
            label[u] = i;
        }
    }
    let mut touched: Vec<usize> = g
        .neighbors(v)
        .iter()
        .filter(|&&u| !removed[u])
        .map(|&u| label[u])
        .collect();
    touched.sort_unstable();
    touched.dedup();
    touched.len()
}

/// Repeatedly drops the smallest redundant vertex of `s` until the set is
/// irredundant. Components are recomputed after every single removal.
pub fn strip_redundant(g: &WeightedGraph, s: &[Vertex]) -> Vec<Vertex> {
    let mut current: Vec<Vertex> = s.to_vec();
    current.sort_unstable();
    current.dedup();
    let mut mask = g.mask_of(&current);
    loop {
        let found = current
            .iter()
            .position(|&v| touched_components(g, &mask, v) <= 1);
        match found {
            Some(i) => {
                mask[current[i]] = false;
                current.remove(i);
            }
            None => return current,
        }
    }
}

/// Result of [`peel_universal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peeled {
    pub graph: WeightedGraph,
    /// Total weight of the peeled vertices.
    pub offset: u64,
    /// Peeled original ids, in removal order.
    pub removed: Vec<Vertex>,
    /// `kept[i]` is the original id of vertex `i` of `graph`.
    pub kept: Vec<Vertex>,
}

/// Removes universal vertices (smallest id first) while the graph has at
/// least two vertices. `wvi(g) = wvi(peeled) + offset`.
pub fn peel_universal(g: &WeightedGraph) -> Peeled {
    let mut alive = vec![true; g.vertex_count()];
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut remaining = g.vertex_count();
    let mut removed = Vec::new();
    let mut offset = 0;
    while remaining >= 2 {
        let Some(u) = g
            .vertices()
            .find(|&v| alive[v] && degree[v] == remaining - 1)
        else {
            break;
        };
        alive[u] = false;
        remaining -= 1;
        offset += g.weight(u);
        removed.push(u);
        for &x in g.neighbors(u) {
            degree[x] -= 1;
        }
    }
    let kept: Vec<Vertex> = g.vertices().filter(|&v| alive[v]).collect();
    Peeled {
        graph: g.induced(&kept),
        offset,
        removed,
        kept,
    }
}
