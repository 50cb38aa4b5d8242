//! Exhaustive ground truth for every quantity the solvers compute.
//!
//! Everything here enumerates subsets with bitmasks. The routines are meant
//! to be obviously correct, not fast; the caps in [`Limits`] keep them at
//! desk scale.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Solution, Vertex, WeightedGraph};
use crate::Limits;

/// Adjacency as bitmasks, for graphs with at most 64 vertices.
pub(crate) struct BitGraph {
    nbr: Vec<u64>,
    weight: Vec<u64>,
}

impl BitGraph {
    pub(crate) fn new(g: &WeightedGraph) -> Self {
        assert!(g.vertex_count() <= 64);
        let nbr = g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
            .collect();
        BitGraph {
            nbr,
            weight: g.weights().to_vec(),
        }
    }

    fn weight_of(&self, mut mask: u64) -> u64 {
        let mut total = 0;
        while mask != 0 {
            total += self.weight[mask.trailing_zeros() as usize];
            mask &= mask - 1;
        }
        total
    }

    /// Calls `f` with every component (as a mask) of the subgraph induced by `alive`.
    fn for_each_component(&self, mut alive: u64, mut f: impl FnMut(u64)) {
        while alive != 0 {
            let start = alive & alive.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.nbr[v] & alive & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            alive &= !comp;
            f(comp);
        }
    }

    fn max_component_weight(&self, alive: u64) -> u64 {
        let mut best = 0;
        self.for_each_component(alive, |c| best = best.max(self.weight_of(c)));
        best
    }

    fn max_component_size(&self, alive: u64) -> u32 {
        let mut best = 0;
        self.for_each_component(alive, |c| best = best.max(c.count_ones()));
        best
    }

    fn is_connected(&self, mask: u64) -> bool {
        let mut count = 0;
        self.for_each_component(mask, |_| count += 1);
        count == 1
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_to_vec(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// `a < b` in the lexicographic order of the sorted vertex lists.
fn mask_lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let low = diff.trailing_zeros();
    let above = if low == 63 { 0 } else { !0u64 << (low + 1) };
    if a >> low & 1 == 1 {
        // a continues with `low`, b continues with something larger or ends
        b & above != 0
    } else {
        a & above == 0
    }
}

#[derive(Clone, Copy)]
struct Best {
    objective: u64,
    mask: u64,
}

impl Best {
    fn offer(&mut self, objective: u64, mask: u64) {
        if objective < self.objective
            || (objective == self.objective && mask_lex_less(mask, self.mask))
        {
            self.objective = objective;
            self.mask = mask;
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.offer(other.objective, other.mask);
        self
    }
}

/// Depth-first include/exclude over `cands`, pruning once the deleted weight
/// alone exceeds the incumbent. `budget` caps the number of deletions.
struct Search<'a> {
    bits: &'a BitGraph,
    all: u64,
    cands: &'a [Vertex],
    budget: usize,
    unit: bool,
}

impl Search<'_> {
    fn run(&self, idx: usize, mask: u64, deleted: u64, count: usize, best: &mut Best) {
        if deleted > best.objective {
            return;
        }
        if idx == self.cands.len() {
            let alive = self.all & !mask;
            let comp = if self.unit {
                self.bits.max_component_size(alive) as u64
            } else {
                self.bits.max_component_weight(alive)
            };
            best.offer(deleted + comp, mask);
            return;
        }
        let v = self.cands[idx];
        if count < self.budget {
            let w = if self.unit { 1 } else { self.bits.weight[v] };
            self.run(idx + 1, mask | 1 << v, deleted + w, count + 1, best);
        }
        self.run(idx + 1, mask, deleted, count, best);
    }

    /// Splits on the first few candidates and reduces deterministically.
    fn solve(&self) -> Best {
        let split = self.cands.len().min(4);
        let initial = Best {
            objective: u64::MAX,
            mask: 0,
        };
        (0u64..1 << split)
            .into_par_iter()
            .map(|prefix| {
                let mut mask = 0u64;
                let mut deleted = 0u64;
                let mut count = 0usize;
                for (i, &v) in self.cands[..split].iter().enumerate() {
                    if prefix >> i & 1 == 1 {
                        mask |= 1 << v;
                        deleted += if self.unit { 1 } else { self.bits.weight[v] };
                        count += 1;
                    }
                }
                let mut best = initial;
                if count <= self.budget {
                    self.run(split, mask, deleted, count, &mut best);
                }
                best
            })
            .reduce(|| initial, Best::merge)
    }
}

fn solution_from_mask(g: &WeightedGraph, mask: u64, unit: bool) -> Solution {
    let deleted = mask_to_vec(mask);
    let sol = crate::graph::evaluate(g, &deleted);
    if unit {
        crate::graph::evaluate(&g.unweighted(), &deleted)
    } else {
        sol
    }
}

/// Optimal weighted solution by enumerating subsets of the non-simplicial
/// vertices. Ties go to the lexicographically smallest deletion set.
pub fn wvi_exact(g: &WeightedGraph) -> Result<Solution> {
    wvi_exact_with(g, &Limits::default())
}

pub fn wvi_exact_with(g: &WeightedGraph, limits: &Limits) -> Result<Solution> {
    exact(g, limits, false)
}

/// [`wvi_exact`] with every weight treated as 1.
pub fn vi_exact(g: &WeightedGraph) -> Result<Solution> {
    vi_exact_with(g, &Limits::default())
}

pub fn vi_exact_with(g: &WeightedGraph, limits: &Limits) -> Result<Solution> {
    exact(g, limits, true)
}

fn exact(g: &WeightedGraph, limits: &Limits, unit: bool) -> Result<Solution> {
    let n = g.vertex_count();
    Error::check_cap("vertex count", n, limits.oracle_vertices.min(64))?;
    let bits = BitGraph::new(g);
    let cands: Vec<Vertex> = g.vertices().filter(|&v| !g.is_simplicial(v)).collect();
    let search = Search {
        bits: &bits,
        all: full_mask(n),
        cands: &cands,
        budget: n,
        unit,
    };
    let best = search.solve();
    Ok(solution_from_mask(g, best.mask, unit))
}

/// Vertices that may never be deleted, and an optional cap on `|S|`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeasibilityConstraint {
    pub forbidden: Vec<Vertex>,
    pub budget: Option<usize>,
}

/// Best unweighted solution among sets avoiding `c.forbidden` with at most
/// `c.budget` vertices.
pub fn feasible_vi_exact(g: &WeightedGraph, c: &FeasibilityConstraint) -> Result<Solution> {
    feasible_vi_exact_with(g, c, &Limits::default())
}

pub fn feasible_vi_exact_with(
    g: &WeightedGraph,
    c: &FeasibilityConstraint,
    limits: &Limits,
) -> Result<Solution> {
    let n = g.vertex_count();
    Error::check_cap("vertex count", n, limits.oracle_vertices.min(64))?;
    if let Some(&v) = c.forbidden.iter().find(|&&v| v >= n) {
        return Err(Error::precondition(format!(
            "forbidden vertex {v} out of range"
        )));
    }
    let bits = BitGraph::new(g);
    let forbidden = g.mask_of(&c.forbidden);
    let cands: Vec<Vertex> = g.vertices().filter(|&v| !forbidden[v]).collect();
    let search = Search {
        bits: &bits,
        all: full_mask(n),
        cands: &cands,
        budget: c.budget.unwrap_or(n),
        unit: true,
    };
    let best = search.solve();
    Ok(solution_from_mask(g, best.mask, true))
}

/// Calls `f` on every `k`-subset of `0..n` (as a mask) in lexicographic order
/// until it returns true.
fn find_subset_of_size(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) -> Option<u64> {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &v| m | 1 << v);
        if f(mask) {
            return Some(mask);
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Minimum number of deletions leaving only components with at most `ell`
/// vertices, with a lexicographically smallest witness.
pub fn coc_exact(g: &WeightedGraph, ell: usize) -> Result<(usize, Vec<Vertex>)> {
    coc_exact_with(g, ell, &Limits::default())
}

pub fn coc_exact_with(
    g: &WeightedGraph,
    ell: usize,
    limits: &Limits,
) -> Result<(usize, Vec<Vertex>)> {
    if ell == 0 {
        return Err(Error::precondition(
            "component order bound must be at least 1",
        ));
    }
    let n = g.vertex_count();
    Error::check_cap("vertex count", n, limits.oracle_vertices.min(64))?;
    let bits = BitGraph::new(g);
    let all = full_mask(n);
    for p in 0..=n {
        if let Some(mask) =
            find_subset_of_size(n, p, |s| bits.max_component_size(all & !s) as usize <= ell)
        {
            return Ok((p, mask_to_vec(mask)));
        }
    }
    unreachable!("deleting everything always works")
}

/// Minimum connected safe set: `G[S]` connected and no component of `G - S`
/// larger than `|S|`. The whole vertex set counts as (vacuously) safe.
pub fn connected_safe_set_exact(g: &WeightedGraph) -> Result<(usize, Vec<Vertex>)> {
    connected_safe_set_exact_with(g, &Limits::default())
}

pub fn connected_safe_set_exact_with(
    g: &WeightedGraph,
    limits: &Limits,
) -> Result<(usize, Vec<Vertex>)> {
    let n = g.vertex_count();
    Error::check_cap("vertex count", n, limits.oracle_vertices.min(64))?;
    if n == 0 || !g.is_connected() {
        return Err(Error::precondition(
            "connected safe sets need a non-empty connected graph",
        ));
    }
    let bits = BitGraph::new(g);
    let all = full_mask(n);
    for size in 1..=n {
        let found = find_subset_of_size(n, size, |s| {
            bits.is_connected(s) && bits.max_component_size(all & !s) as usize <= size
        });
        if let Some(mask) = found {
            return Ok((size, mask_to_vec(mask)));
        }
    }
    unreachable!("the whole vertex set is safe")
}

/// Minimum of `|F| + max edges in a component of G - F` over edge sets `F`.
/// Returns the optimum and a lexicographically smallest (by edge index) `F`.
pub fn line_integrity_exact(g: &WeightedGraph) -> Result<(u64, Vec<(Vertex, Vertex)>)> {
    line_integrity_exact_with(g, &Limits::default())
}

pub fn line_integrity_exact_with(
    g: &WeightedGraph,
    limits: &Limits,
) -> Result<(u64, Vec<(Vertex, Vertex)>)> {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let m = edges.len();
    Error::check_cap("edge count", m, limits.oracle_edges.min(63))?;
    let n = g.vertex_count();
    let evaluate = |removed: u64| -> u64 {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if removed >> i & 1 == 0 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut count = vec![0u64; n];
        for (i, &(u, _)) in edges.iter().enumerate() {
            if removed >> i & 1 == 0 {
                let r = find(&mut parent, u);
                count[r] += 1;
            }
        }
        removed.count_ones() as u64 + count.into_iter().max().unwrap_or(0)
    };
    let mut best = Best {
        objective: u64::MAX,
        mask: 0,
    };
    for removed in 0u64..1 << m {
        if removed.count_ones() as u64 > best.objective {
            continue;
        }
        best.offer(evaluate(removed), removed);
    }
    let f = (0..m)
        .filter(|&i| best.mask >> i & 1 == 1)
        .map(|i| edges[i])
        .collect();
    Ok((best.objective, f))
}
