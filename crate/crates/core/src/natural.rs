//! Branching in the solution value `k`.
//!
//! With a partial deletion set `S` and remaining budget `r = k - weight(S)`,
//! any component heavier than `r` contains a connected set `T` of weight
//! more than `r` grown by BFS from its smallest vertex. Every completion of
//! `S` must delete a vertex of `T`, and since weights are at least 1,
//! `|T| <= r + 1`. The search tree has depth at most `k` and fan-out at most
//! `k + 1`.

use std::collections::{HashSet, VecDeque};

use crate::graph::{components_masked, evaluate, Solution, Vertex, WeightedGraph};

fn grow_heavy_set(g: &WeightedGraph, removed: &[bool], start: Vertex, limit: u64) -> Vec<Vertex> {
    let mut picked = Vec::new();
    let mut total = 0u64;
    let mut seen = removed.to_vec();
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        picked.push(v);
        total += g.weight(v);
        if total > limit {
            break;
        }
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    picked
}

// Deletion sets already known to have no completion within the budget. The
// same set is reached once per order of its vertices otherwise.
fn branch(
    g: &WeightedGraph,
    removed: &mut Vec<bool>,
    deleted_weight: u64,
    k: u64,
    failed: &mut HashSet<Vec<bool>>,
) -> bool {
    if failed.contains(removed.as_slice()) {
        return false;
    }
    let remaining = k - deleted_weight;
    let heavy = components_masked(g, removed)
        .into_iter()
        .find(|c| g.weight_of(c) > remaining);
    let Some(component) = heavy else {
        return true;
    };
    let t = grow_heavy_set(g, removed, component[0], remaining);
    for v in t {
        let w = g.weight(v);
        if w > remaining {
            continue;
        }
        removed[v] = true;
        if branch(g, removed, deleted_weight + w, k, failed) {
            return true;
        }
        removed[v] = false;
    }
    failed.insert(removed.clone());
    false
}

/// A solution with objective at most `k`, if one exists.
pub fn wvi_decide_branching(g: &WeightedGraph, k: u64) -> Option<Solution> {
    let mut removed = vec![false; g.vertex_count()];
    if !branch(g, &mut removed, 0, k, &mut HashSet::new()) {
        return None;
    }
    let deleted: Vec<Vertex> = g.vertices().filter(|&v| removed[v]).collect();
    let sol = evaluate(g, &deleted);
    assert!(
        sol.objective <= k,
        "branching returned a set above the budget"
    );
    Some(sol)
}

/// Optimal solution.
///
/// Deciding is monotone in `k`, so the smallest feasible `k` is located by
/// doubling from `max(1, max weight)` followed by bisection. The certificate
/// is the one produced by `wvi_decide_branching(g, opt)`, the same call a
/// linear upward scan would end on.
pub fn wvi_optimize_branching(g: &WeightedGraph) -> Solution {
    let lower = g.max_weight().max(1);
    if g.vertex_count() == 0 {
        return evaluate(g, &[]);
    }
    // invariant: decide(lo - 1) fails (or lo is the lower bound), decide(hi) succeeds
    let mut lo = lower;
    let mut step = 1u64;
    let mut hi = lower;
    while wvi_decide_branching(g, hi).is_none() {
        lo = hi + 1;
        hi = hi.saturating_add(step).min(g.total_weight());
        step = step.saturating_mul(2);
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if wvi_decide_branching(g, mid).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    wvi_decide_branching(g, lo).expect("the bisection ends on a feasible value")
}
