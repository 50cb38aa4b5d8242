//! Unary-weight dynamic program over a modular decomposition.
//!
//! For a bound `ℓ`, `μ(t, ℓ)` is the least weight of a set `S` in the graph
//! of node `t` such that every component of the rest weighs at most `ℓ`
//! (`None` when no such set exists). At an inner node `H(H_1, ..., H_c)` a
//! set fully deletes the modules of some `I_f`; the other modules that are
//! isolated in `H - I_f` recurse independently, and every larger component of
//! `H - I_f` must keep its modules whole and weigh at most `ℓ` in total.
//! The answer is the minimum of `μ(root, ℓ) + ℓ` over every `ℓ ∈ 1..=W`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{evaluate, strip_redundant, Solution, Vertex, WeightedGraph};
use crate::params::{MdNode, ModularDecomposition};
use crate::Limits;

/// How the modules of an inner node are treated in a partition
/// `(I_f, I_p, I_∅)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleRole {
    Full,
    Partial,
    Untouched,
}

/// Value of one inner node for a fixed `ℓ`, with the minimizing `I_f` as a
/// bitmask over child positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub value: Option<u64>,
    pub full: u64,
}

/// Evaluates one inner node with quotient `h`, child module weights
/// `module_weight` and child values `child_mu` for the current `ℓ`.
///
/// Only the choice of `I_f` is enumerated: a module isolated in `H - I_f` is
/// free if it weighs at most `ℓ` and is charged its own `μ` otherwise, and
/// modules in larger components must be untouched.
pub fn mw_node_transition(
    h: &WeightedGraph,
    module_weight: &[u64],
    child_mu: &[Option<u64>],
    ell: u64,
) -> Transition {
    let c = h.vertex_count();
    let nbr: Vec<u64> = (0..c)
        .map(|i| h.neighbors(i).iter().fold(0, |m, &j| m | 1 << j))
        .collect();
    let mut best = Transition {
        value: None,
        full: 0,
    };
    for full in 0u64..1 << c {
        let Some(value) = partition_value(&nbr, module_weight, child_mu, ell, full) else {
            continue;
        };
        if best.value.is_none_or(|b| value < b) {
            best = Transition {
                value: Some(value),
                full,
            };
        }
    }
    best
}

fn partition_value(
    nbr: &[u64],
    module_weight: &[u64],
    child_mu: &[Option<u64>],
    ell: u64,
    full: u64,
) -> Option<u64> {
    let c = nbr.len();
    let all = (1u64 << c) - 1;
    let rest = all & !full;
    let mut value: u64 = (0..c)
        .filter(|&i| full >> i & 1 == 1)
        .map(|i| module_weight[i])
        .sum();
    let mut unseen = rest;
    while unseen != 0 {
        let start = unseen.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let grow = nbr[i] & rest & !comp;
            comp |= grow;
            frontier |= grow;
        }
        unseen &= !comp;
        if comp.count_ones() == 1 {
            if module_weight[start] > ell {
                value += child_mu[start]?;
            }
        } else {
            let weight: u64 = (0..c)
                .filter(|&i| comp >> i & 1 == 1)
                .map(|i| module_weight[i])
                .sum();
            if weight > ell {
                return None;
            }
        }
    }
    Some(value)
}

/// Reference transition enumerating all `3^c` role assignments literally.
/// Partial modules must be isolated in `H - I_f`, and every component of
/// untouched modules must weigh at most `ℓ`.
pub fn mw_node_transition_reference(
    h: &WeightedGraph,
    module_weight: &[u64],
    child_mu: &[Option<u64>],
    ell: u64,
) -> Option<u64> {
    let c = h.vertex_count();
    let mut roles = vec![ModuleRole::Untouched; c];
    let mut best: Option<u64> = None;
    let total = 3usize.pow(c as u32);
    for code in 0..total {
        let mut x = code;
        for r in roles.iter_mut() {
            *r = [ModuleRole::Full, ModuleRole::Partial, ModuleRole::Untouched][x % 3];
            x /= 3;
        }
        let partial_ok = (0..c)
            .filter(|&i| roles[i] == ModuleRole::Partial)
            .all(|i| h.neighbors(i).iter().all(|&j| roles[j] == ModuleRole::Full));
        if !partial_ok {
            continue;
        }
        let removed: Vec<Vertex> = (0..c)
            .filter(|&i| roles[i] != ModuleRole::Untouched)
            .collect();
        let weights_ok = crate::connected_components(h, &removed)
            .iter()
            .all(|comp| comp.iter().map(|&i| module_weight[i]).sum::<u64>() <= ell);
        if !weights_ok {
            continue;
        }
        let mut value = 0u64;
        let mut feasible = true;
        for i in 0..c {
            match roles[i] {
                ModuleRole::Full => value += module_weight[i],
                ModuleRole::Partial => match child_mu[i] {
                    Some(m) => value += m,
                    None => feasible = false,
                },
                ModuleRole::Untouched => {}
            }
        }
        if feasible && best.is_none_or(|b| value < b) {
            best = Some(value);
        }
    }
    best
}

struct Prepared<'a> {
    md: &'a ModularDecomposition,
    order: Vec<usize>,
    weight: Vec<u64>,
}

impl<'a> Prepared<'a> {
    fn new(g: &WeightedGraph, md: &'a ModularDecomposition) -> Self {
        let order = md.post_order();
        let mut weight = vec![0u64; md.node_count()];
        for &t in &order {
            weight[t] = match md.node(t) {
                MdNode::Leaf(v) => g.weight(*v),
                MdNode::Inner { children, .. } => children.iter().map(|&c| weight[c]).sum(),
            };
        }
        Prepared { md, order, weight }
    }

    /// `μ(t, ℓ)` and the chosen `I_f` for every node.
    fn table(&self, ell: u64) -> (Vec<Option<u64>>, Vec<u64>) {
        let n = self.md.node_count();
        let mut mu = vec![None; n];
        let mut full = vec![0u64; n];
        for &t in &self.order {
            match self.md.node(t) {
                MdNode::Leaf(_) => mu[t] = (self.weight[t] <= ell).then_some(0),
                MdNode::Inner { quotient, children } => {
                    let weights: Vec<u64> = children.iter().map(|&c| self.weight[c]).collect();
                    let child_mu: Vec<Option<u64>> = children.iter().map(|&c| mu[c]).collect();
                    let tr = mw_node_transition(quotient, &weights, &child_mu, ell);
                    mu[t] = tr.value;
                    full[t] = tr.full;
                }
            }
        }
        (mu, full)
    }

    fn reconstruct(&self, full: &[u64], ell: u64, t: usize, out: &mut Vec<Vertex>) {
        let MdNode::Inner { quotient, children } = self.md.node(t) else {
            return;
        };
        let f = full[t];
        for (i, &c) in children.iter().enumerate() {
            if f >> i & 1 == 1 {
                out.extend(self.md.vertices_under(c));
            } else if self.weight[c] > ell && quotient.neighbors(i).iter().all(|&j| f >> j & 1 == 1)
            {
                self.reconstruct(full, ell, c, out);
            }
        }
    }
}

fn check(g: &WeightedGraph, md: &ModularDecomposition, limits: &Limits) -> Result<()> {
    if !md.represents(g) {
        return Err(Error::precondition(
            "the decomposition does not evaluate to the graph",
        ));
    }
    Error::check_cap(
        "total weight",
        g.total_weight() as usize,
        limits.unary_weight as usize,
    )?;
    Error::check_cap("decomposition width", md.width(), limits.md_width.min(63))
}

/// `μ(root, ℓ)` for `ℓ = 1..=W`, index `ℓ - 1`.
pub fn mu_profile(g: &WeightedGraph, md: &ModularDecomposition) -> Result<Vec<Option<u64>>> {
    check(g, md, &Limits::default())?;
    let prep = Prepared::new(g, md);
    Ok((1..=g.total_weight())
        .into_par_iter()
        .map(|ell| prep.table(ell).0[md.root()])
        .collect())
}

/// Optimal solution from a modular decomposition of `g`.
pub fn wvi_mw(g: &WeightedGraph, md: &ModularDecomposition) -> Result<Solution> {
    wvi_mw_with(g, md, &Limits::default())
}

pub fn wvi_mw_with(
    g: &WeightedGraph,
    md: &ModularDecomposition,
    limits: &Limits,
) -> Result<Solution> {
    check(g, md, limits)?;
    let prep = Prepared::new(g, md);
    let best = (1..=g.total_weight())
        .into_par_iter()
        .filter_map(|ell| prep.table(ell).0[md.root()].map(|mu| (mu + ell, ell)))
        .min();
    let Some((objective, ell)) = best else {
        return Ok(evaluate(g, &[]));
    };
    let (_, full) = prep.table(ell);
    let mut s = Vec::new();
    prep.reconstruct(&full, ell, md.root(), &mut s);
    s.sort_unstable();
    let sol = evaluate(g, &strip_redundant(g, &s));
    assert_eq!(
        sol.objective, objective,
        "reconstructed set does not attain the table value"
    );
    Ok(sol)
}
