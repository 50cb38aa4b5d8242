#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use vintegrity::cw::CwState;
use vintegrity::params::CExpression;
use vintegrity::{connected_components, WeightedGraph};

/// `G(n, p)` with its components chained by one random edge each, so the
/// result is connected.
pub fn random_connected(
    rng: &mut impl Rng,
    n: usize,
    density: f64,
    weights: Vec<u64>,
) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let g = WeightedGraph::unit(n, &edges).unwrap();
    let comps = connected_components(&g, &[]);
    for pair in comps.windows(2) {
        let a = pair[0][rng.gen_range(0..pair[0].len())];
        let b = pair[1][rng.gen_range(0..pair[1].len())];
        edges.push((a.min(b), a.max(b)));
    }
    edges.sort_unstable();
    edges.dedup();
    WeightedGraph::new(n, &edges, weights).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::unit(n, &edges).unwrap()
}

pub fn random_weights(rng: &mut impl Rng, n: usize, max: u64) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(1..=max)).collect()
}

/// Random c-expression over `leaves` leaves with labels `1..=labels`.
pub fn random_expression(rng: &mut impl Rng, leaves: usize, labels: usize) -> CExpression {
    fn build(rng: &mut impl Rng, leaves: usize, labels: usize) -> String {
        let mut text = if leaves == 1 {
            format!("o{}", rng.gen_range(1..=labels))
        } else {
            let left = rng.gen_range(1..leaves);
            format!(
                "u({},{})",
                build(rng, left, labels),
                build(rng, leaves - left, labels)
            )
        };
        for _ in 0..rng.gen_range(0..3) {
            let a = rng.gen_range(1..=labels);
            let mut b = rng.gen_range(1..=labels);
            if a == b {
                b = a % labels + 1;
            }
            if a == b {
                break;
            }
            text = if rng.gen_bool(0.6) {
                format!("e{a},{b}({text})")
            } else {
                format!("r{a},{b}({text})")
            };
        }
        text
    }
    CExpression::parse(&build(rng, leaves, labels)).unwrap()
}

/// States of node `t` straight from the definition: for every `S ⊆ V_t`,
/// the total and the largest weight of the components of `G_t - S` grouped
/// by their label sets.
pub fn brute_force_states(expr: &CExpression, weights: &[u64], t: usize) -> BTreeSet<CwState> {
    let lg = expr.eval_node(t);
    let n = lg.vertices.len();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << n {
        let removed: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let entries = connected_components(&lg.graph, &removed)
            .into_iter()
            .map(|comp| {
                let labels = comp.iter().fold(0u32, |m, &i| m | 1 << (lg.labels[i] - 1));
                let w: u64 = comp.iter().map(|&i| weights[lg.vertices[i]]).sum();
                (labels, w, w)
            });
        out.insert(CwState::from_entries(entries));
    }
    out
}

/// Some subset of `a` sums to exactly half of the total.
pub fn has_partition(a: &[u64]) -> bool {
    let sum: u64 = a.iter().sum();
    sum % 2 == 0
        && (0u32..1 << a.len()).any(|m| {
            (0..a.len())
                .filter(|&i| m >> i & 1 == 1)
                .map(|i| a[i])
                .sum::<u64>()
                * 2
                == sum
        })
}

/// The items can be split into `t` bins of equal total.
pub fn has_bin_packing(t: u64, a: &[u64]) -> bool {
    let sum: u64 = a.iter().sum();
    if sum % t != 0 {
        return false;
    }
    let bound = sum / t;
    let mut bins = vec![0u64; t as usize];
    fn place(i: usize, a: &[u64], bins: &mut [u64], bound: u64) -> bool {
        if i == a.len() {
            return bins.iter().all(|&b| b == bound);
        }
        for j in 0..bins.len() {
            if bins[j] + a[i] <= bound {
                bins[j] += a[i];
                if place(i + 1, a, bins, bound) {
                    return true;
                }
                bins[j] -= a[i];
            }
        }
        false
    }
    place(0, a, &mut bins, bound)
}

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = WeightedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = (0..pairs.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        WeightedGraph::unit(n, &edges).unwrap()
    })
}
