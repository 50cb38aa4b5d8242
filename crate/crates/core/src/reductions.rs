//! Generators for the gadget instances of the hardness reductions, plus the
//! line graph transform.
//!
//! Every generator returns the graph, the budget `k` of the target instance,
//! a short description of the source instance and a role tag per vertex.
//! Indices inside role tags are 1-based.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub graph: WeightedGraph,
    pub budget: u64,
    pub source: String,
    /// Role of every vertex, indexed by vertex id.
    pub roles: Vec<String>,
}

impl ReductionInstance {
    /// Sidecar object `{"k": .., "source": .., "roles": {"<id>": role}}`.
    pub fn to_json(&self) -> Value {
        let roles: Map<String, Value> = self
            .roles
            .iter()
            .enumerate()
            .map(|(v, r)| (v.to_string(), Value::String(r.clone())))
            .collect();
        json!({ "k": self.budget, "source": self.source, "roles": roles })
    }

    /// Vertices carrying exactly this role tag.
    pub fn with_role(&self, role: &str) -> Vec<Vertex> {
        (0..self.roles.len())
            .filter(|&v| self.roles[v] == role)
            .collect()
    }
}

struct Builder {
    weights: Vec<u64>,
    roles: Vec<String>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            weights: Vec::new(),
            roles: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn add(&mut self, weight: u64, role: impl Into<String>) -> Vertex {
        self.weights.push(weight);
        self.roles.push(role.into());
        self.weights.len() - 1
    }

    fn edge(&mut self, u: Vertex, v: Vertex) {
        self.edges.push((u.min(v), u.max(v)));
    }

    /// Path of `len` new vertices hanging off `anchor`; returns them from
    /// nearest to farthest.
    fn path_from(&mut self, anchor: Vertex, len: usize, role: &str) -> Vec<Vertex> {
        let mut prev = anchor;
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            let x = self.add(1, role);
            self.edge(prev, x);
            prev = x;
            out.push(x);
        }
        out
    }

    fn finish(self, budget: u64, source: String) -> Result<ReductionInstance> {
        let mut edges = self.edges;
        edges.sort_unstable();
        let graph = WeightedGraph::new(self.weights.len(), &edges, self.weights)?;
        Ok(ReductionInstance {
            graph,
            budget,
            source,
            roles: self.roles,
        })
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::precondition(msg))
    }
}

/// Component order connectivity `(h, ℓ, p)` to unweighted vertex integrity:
/// `p` pendants on every vertex of `h` and `k + 1` disjoint stars
/// `K_{1,k-p-1}`, where `k = ℓp + ℓ + p`.
pub fn gen_coc_to_vi(h: &WeightedGraph, ell: u64, p: u64) -> Result<ReductionInstance> {
    require(ell >= 1 && p >= 1, "ℓ and p must be at least 1")?;
    let k = ell * p + ell + p;
    require(k >= p + 2, "stars K_{1,k-p-1} need k - p - 1 >= 1")?;
    let mut b = Builder::new();
    for v in h.vertices() {
        b.add(1, format!("h_{}", v + 1));
    }
    for (u, v) in h.edges() {
        b.edge(u, v);
    }
    for v in h.vertices() {
        for _ in 0..p {
            let x = b.add(1, "pendant");
            b.edge(v, x);
        }
    }
    for _ in 0..=k {
        let center = b.add(1, "star-center");
        for _ in 0..k - p - 1 {
            let leaf = b.add(1, "star-leaf");
            b.edge(center, leaf);
        }
    }
    let source = format!(
        "component order connectivity: n={}, m={}, ell={ell}, p={p}",
        h.vertex_count(),
        h.edge_count()
    );
    b.finish(k, source)
}

fn bin_packing_bound(t: u64, a: &[u64]) -> Result<u64> {
    require(t >= 1, "need at least one bin")?;
    require(!a.is_empty(), "need at least one item")?;
    require(a.iter().all(|&x| x >= 1), "item sizes must be positive")?;
    let sum: u64 = a.iter().sum();
    require(sum % t == 0, "item sizes must sum to a multiple of t")?;
    let bound = sum / t;
    require(
        a.iter().all(|&x| x <= bound),
        "an item is larger than a bin",
    )?;
    Ok(bound)
}

/// Smallest `s >= 1` with `s·min(a) > threshold`.
fn scale_above(a: &[u64], threshold: u64) -> u64 {
    let min = *a.iter().min().expect("non-empty");
    threshold / min + 1
}

/// Unary bin packing `(t, a)` to unary weighted vertex integrity.
///
/// Sizes are first multiplied by the smallest `s` with `s·a_i - 1 > (t-1)n`.
/// Vertices `u_i` (weight `a_i - 1`), `v_i^j` (weight 1), `w_j` (weight `2B`)
/// and an isolated `x` (weight `3B`); edges `u_i v_i^j` and `v_i^j w_j`, and
/// each `{v_i^1, ..., v_i^t}` a clique if `cliques`. With `connect`, a
/// universal vertex of weight 1 is added and the budget grows by 1.
pub fn gen_binpacking_to_unary_wvi(
    t: u64,
    a: &[u64],
    cliques: bool,
    connect: bool,
) -> Result<ReductionInstance> {
    bin_packing_bound(t, a)?;
    let n = a.len() as u64;
    let s = scale_above(a, (t - 1) * n + 1);
    let a: Vec<u64> = a.iter().map(|&x| x * s).collect();
    let bound = a.iter().sum::<u64>() / t;
    let mut k = (t - 1) * n + 3 * bound;

    let mut b = Builder::new();
    let u: Vec<Vertex> = (0..a.len())
        .map(|i| b.add(a[i] - 1, format!("u_{}", i + 1)))
        .collect();
    let v: Vec<Vec<Vertex>> = (0..a.len())
        .map(|i| {
            (0..t)
                .map(|j| b.add(1, format!("v_{}^{}", i + 1, j + 1)))
                .collect()
        })
        .collect();
    let w: Vec<Vertex> = (0..t)
        .map(|j| b.add(2 * bound, format!("w_{}", j + 1)))
        .collect();
    b.add(3 * bound, "x");
    for i in 0..a.len() {
        for j in 0..t as usize {
            b.edge(u[i], v[i][j]);
            b.edge(v[i][j], w[j]);
            if cliques {
                for jj in j + 1..t as usize {
                    b.edge(v[i][j], v[i][jj]);
                }
            }
        }
    }
    if connect {
        let n_before = b.weights.len();
        let hub = b.add(1, "universal");
        for x in 0..n_before {
            b.edge(x, hub);
        }
        k += 1;
    }
    let source = format!(
        "bin packing: t={t}, items={a:?} (scaled by {s}), B={bound}, cliques={cliques}, connected={connect}"
    );
    b.finish(k, source)
}

/// Partition `a` to binary weighted vertex integrity on a subdivided star:
/// center `r` (weight `B+1`), spokes `u_i` (weight `a_i`) with tips `v_i`
/// (weight `a_i·B`), spoke `w` (weight 1) with tip `x` (weight `(B+1)^2`),
/// and `k = (B+1)(B+2)`.
pub fn gen_partition_to_subdivided_star(a: &[u64]) -> Result<ReductionInstance> {
    require(!a.is_empty(), "need at least one item")?;
    require(a.iter().all(|&x| x >= 1), "item sizes must be positive")?;
    let sum: u64 = a.iter().sum();
    require(sum % 2 == 0, "item sizes must have an even sum")?;
    let bound = sum / 2;
    require(
        a.iter().all(|&x| x <= bound),
        "an item is larger than half the sum",
    )?;
    let mut b = Builder::new();
    let r = b.add(bound + 1, "r");
    let u: Vec<Vertex> = (0..a.len())
        .map(|i| b.add(a[i], format!("u_{}", i + 1)))
        .collect();
    let v: Vec<Vertex> = (0..a.len())
        .map(|i| b.add(a[i] * bound, format!("v_{}", i + 1)))
        .collect();
    let w = b.add(1, "w");
    let x = b.add((bound + 1) * (bound + 1), "x");
    for i in 0..a.len() {
        b.edge(r, u[i]);
        b.edge(u[i], v[i]);
    }
    b.edge(r, w);
    b.edge(w, x);
    b.finish(
        (bound + 1) * (bound + 2),
        format!("partition: items={a:?}, B={bound}"),
    )
}

/// Vertex cover `(h, p)` on a connected cubic graph to unweighted vertex
/// integrity on a bipartite graph of maximum degree 4.
///
/// Every edge of `h` is subdivided once (vertices `V_E`, in edge order), a
/// path of `p + 2` vertices hangs off every original vertex, and `p + 4`
/// spiders (three legs of `p + 6` vertices each) are attached by their
/// centers to the first `p + 4` subdivision vertices. `k = 3p + 10`.
pub fn gen_vc_to_planar_bipartite(h: &WeightedGraph, p: u64) -> Result<ReductionInstance> {
    let n = h.vertex_count();
    require(
        h.vertices().all(|v| h.degree(v) == 3),
        "the source graph must be cubic",
    )?;
    require(h.is_connected(), "the source graph must be connected")?;
    require(n >= 6, "the source graph needs at least 6 vertices")?;
    require(p <= n as u64 - 1, "p must be at most |V| - 1")?;
    let p_us = p as usize;
    let mut b = Builder::new();
    for v in h.vertices() {
        b.add(1, format!("h_{}", v + 1));
    }
    let subdivisions: Vec<Vertex> = h
        .edges()
        .map(|(x, y)| {
            let s = b.add(1, format!("e_{}_{}", x + 1, y + 1));
            b.edge(x, s);
            b.edge(s, y);
            s
        })
        .collect();
    for v in h.vertices() {
        b.path_from(v, p_us + 2, "path");
    }
    for i in 0..p_us + 4 {
        let center = b.add(1, "spider-center");
        for _ in 0..3 {
            b.path_from(center, p_us + 6, "spider-leg");
        }
        b.edge(center, subdivisions[i]);
    }
    let source = format!("vertex cover: n={n}, m={}, p={p}", h.edge_count());
    b.finish(3 * p + 10, source)
}

/// Unary bin packing `(t, a)` to line integrity on a connected graph.
///
/// Sizes are first multiplied by the smallest `s` with `s·a_i > tn`. A
/// biclique between `u_1..u_n` and `v_1..v_t`, `a_i - 1` pendants on `u_i`,
/// `2B` pendants on every `v_j`, a star `K_{1,3B}` centered at `w` and the
/// edge `w u_n`. `k = (t-1)n + 3B + 1`.
pub fn gen_binpacking_to_line_integrity(t: u64, a: &[u64]) -> Result<ReductionInstance> {
    bin_packing_bound(t, a)?;
    let n = a.len() as u64;
    let s = scale_above(a, t * n);
    let a: Vec<u64> = a.iter().map(|&x| x * s).collect();
    let bound = a.iter().sum::<u64>() / t;
    let mut b = Builder::new();
    let u: Vec<Vertex> = (0..a.len())
        .map(|i| b.add(1, format!("u_{}", i + 1)))
        .collect();
    let v: Vec<Vertex> = (0..t).map(|j| b.add(1, format!("v_{}", j + 1))).collect();
    for &x in &u {
        for &y in &v {
            b.edge(x, y);
        }
    }
    for i in 0..a.len() {
        for _ in 0..a[i] - 1 {
            let q = b.add(1, "pendant");
            b.edge(u[i], q);
        }
    }
    for &y in &v {
        for _ in 0..2 * bound {
            let q = b.add(1, "pendant");
            b.edge(y, q);
        }
    }
    let w = b.add(1, "w");
    for _ in 0..3 * bound {
        let q = b.add(1, "star-leaf");
        b.edge(w, q);
    }
    b.edge(w, *u.last().expect("non-empty"));
    let source = format!("bin packing: t={t}, items={a:?} (scaled by {s}), B={bound}");
    b.finish((t - 1) * n + 3 * bound + 1, source)
}

/// Line graph with the edge behind every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraph {
    pub graph: WeightedGraph,
    /// `edges[x]` is the edge of the source graph that vertex `x` stands for;
    /// edges appear in lexicographic order.
    pub edges: Vec<(Vertex, Vertex)>,
}

/// Unit-weight line graph of `g`.
pub fn line_graph(g: &WeightedGraph) -> Result<LineGraph> {
    require(
        g.edge_count() >= 1,
        "the line graph of an edgeless graph is empty",
    )?;
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (x, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(x);
        incident[v].push(x);
    }
    let mut adj = Vec::new();
    for list in &incident {
        for (i, &x) in list.iter().enumerate() {
            for &y in &list[i + 1..] {
                adj.push((x.min(y), x.max(y)));
            }
        }
    }
    adj.sort_unstable();
    adj.dedup();
    Ok(LineGraph {
        graph: WeightedGraph::unit(edges.len(), &adj)?,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, path, star};

    #[test]
    fn coc_counts() {
        let g = gen_coc_to_vi(&complete(3), 1, 1).unwrap();
        assert_eq!((g.budget, g.graph.vertex_count()), (3, 14));
        assert_eq!(gen_coc_to_vi(&complete(3), 1, 2).unwrap().budget, 5);
        assert_eq!(
            gen_coc_to_vi(&WeightedGraph::unit(1, &[]).unwrap(), 1, 1)
                .unwrap()
                .budget,
            3
        );
    }

    #[test]
    fn binpacking_counts() {
        let g = gen_binpacking_to_unary_wvi(2, &[12, 12], false, false).unwrap();
        assert_eq!((g.budget, g.graph.vertex_count()), (38, 9));
        assert!(g.source.contains("scaled by 1"));
        let g = gen_binpacking_to_unary_wvi(2, &[12, 12], false, true).unwrap();
        assert_eq!((g.budget, g.graph.vertex_count()), (39, 10));
        assert_eq!(g.graph.weight(g.with_role("x")[0]), 36);
        assert_eq!(g.graph.weight(g.with_role("u_1")[0]), 11);
        assert_eq!(g.graph.weight(g.with_role("w_2")[0]), 24);
        assert!(gen_binpacking_to_unary_wvi(2, &[16, 8], false, true).is_err());
        assert!(gen_binpacking_to_unary_wvi(2, &[3, 4], false, true).is_err());
        // 1,1 needs s·1 - 1 > 2, so s = 4
        let g = gen_binpacking_to_unary_wvi(2, &[1, 1], true, false).unwrap();
        assert!(g.source.contains("scaled by 4"));
    }

    #[test]
    fn partition_weights() {
        let g = gen_partition_to_subdivided_star(&[1, 1, 2]).unwrap();
        assert_eq!(g.budget, 12);
        assert_eq!(g.graph.weights(), &[3, 1, 1, 2, 2, 2, 4, 1, 9]);
        assert_eq!(g.graph.edge_count(), 8);
        assert!(gen_partition_to_subdivided_star(&[1, 3]).is_err());
        assert!(gen_partition_to_subdivided_star(&[1, 2]).is_err());
    }

    #[test]
    fn planar_counts() {
        assert!(gen_vc_to_planar_bipartite(&complete(4), 1).is_err());
        let k33 = WeightedGraph::unit(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        )
        .unwrap();
        let g = gen_vc_to_planar_bipartite(&k33, 3).unwrap();
        assert_eq!(g.budget, 19);
        assert_eq!(g.roles.iter().filter(|r| r.starts_with("e_")).count(), 9);
        assert_eq!(g.with_role("spider-center").len(), 7);
        assert_eq!(g.with_role("spider-leg").len(), 7 * 27);
        assert_eq!(g.graph.vertices().map(|v| g.graph.degree(v)).max(), Some(4));
        assert!(g.graph.is_connected());
    }

    #[test]
    fn line_integrity_counts() {
        let g = gen_binpacking_to_line_integrity(2, &[12, 12]).unwrap();
        assert_eq!(g.budget, 39);
        assert_eq!(g.graph.edge_count(), 4 + 22 + 48 + 36 + 1);
        assert!(g.graph.is_connected());
    }

    #[test]
    fn line_graph_examples() {
        assert_eq!(line_graph(&path(3)).unwrap().graph.edge_count(), 1);
        assert_eq!(line_graph(&complete(3)).unwrap().graph.edge_count(), 3);
        let l = line_graph(&star(3)).unwrap();
        assert_eq!((l.graph.vertex_count(), l.graph.edge_count()), (3, 3));
        assert_eq!(l.edges, vec![(0, 1), (0, 2), (0, 3)]);
        assert!(line_graph(&WeightedGraph::unit(3, &[]).unwrap()).is_err());
    }

    #[test]
    fn json_sidecar() {
        let g = gen_partition_to_subdivided_star(&[1, 1]).unwrap();
        let j = g.to_json();
        assert_eq!(j["k"], 6);
        assert_eq!(j["roles"]["0"], "r");
        assert_eq!(j["roles"]["6"], "x");
    }
}
