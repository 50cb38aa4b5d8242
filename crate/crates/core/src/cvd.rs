//! Unweighted vertex integrity parameterized by a cluster vertex deletion set.
//!
//! With `k = |D|`, an optimal set deletes at most `k` vertices outside the
//! largest clique `C` of `G - D`, and takes every twin class all or nothing.
//! `C` has at most `2^k` twin classes. The solver guesses which of them and
//! which vertices of `D` are deleted, enlarges the remaining deletion set by
//! absorbing large attached twin classes, and solves the resulting nice
//! instance of the subproblem where at most `k` vertices outside `D` may be
//! deleted.
//!
//! Guessing only the classes of `C` with more than `k` vertices is not
//! enough: small classes of `C` may together exceed the budget `k` left for
//! the subproblem.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    components_masked, evaluate, strip_redundant, twin_classes, Solution, Vertex, WeightedGraph,
};
use crate::params::is_cluster_deletion_set;
use crate::{better, Limits};

/// Attachment profile of a clique of `G - D`: for each non-empty set of
/// components of `G[D]` (by index), the number of clique vertices adjacent
/// to exactly those components, plus whether some vertex sees none of them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClusterType {
    pub profile: BTreeMap<Vec<usize>, usize>,
    pub has_private: bool,
}

/// Cliques of `G - D` with their types.
#[derive(Debug, Clone)]
pub struct ComponentTypes {
    /// Components of `G[D]`, each sorted, ordered by smallest vertex.
    pub d_components: Vec<Vec<Vertex>>,
    /// Cliques of `G - D`, ordered by smallest vertex. This index is the
    /// clique id.
    pub cliques: Vec<Vec<Vertex>>,
    /// Distinct types, numbered by first occurrence along `cliques`.
    pub types: Vec<ClusterType>,
    pub type_of: Vec<usize>,
    /// For every vertex outside `D`, the sorted indices of the components of
    /// `G[D]` it is adjacent to. Empty for vertices of `D`.
    pub attachment: Vec<Vec<usize>>,
}

/// Computes the cliques of `G - D` and their types. `d` must be a cluster
/// vertex deletion set.
pub fn component_types(g: &WeightedGraph, d: &[Vertex]) -> ComponentTypes {
    let in_d = g.mask_of(d);
    let outside: Vec<bool> = in_d.iter().map(|&x| !x).collect();
    let d_components = components_masked(g, &outside);
    let mut comp_of = vec![usize::MAX; g.vertex_count()];
    for (i, comp) in d_components.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut attachment = vec![Vec::new(); g.vertex_count()];
    for v in g.vertices().filter(|&v| !in_d[v]) {
        let mut seen: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter(|&&u| in_d[u])
            .map(|&u| comp_of[u])
            .collect();
        seen.sort_unstable();
        seen.dedup();
        attachment[v] = seen;
    }
    let cliques = components_masked(g, &in_d);
    let mut types: Vec<ClusterType> = Vec::new();
    let mut type_of = Vec::with_capacity(cliques.len());
    for clique in &cliques {
        let mut ty = ClusterType {
            profile: BTreeMap::new(),
            has_private: false,
        };
        for &v in clique {
            if attachment[v].is_empty() {
                ty.has_private = true;
            } else {
                *ty.profile.entry(attachment[v].clone()).or_insert(0) += 1;
            }
        }
        let id = match types.iter().position(|t| *t == ty) {
            Some(id) => id,
            None => {
                types.push(ty);
                types.len() - 1
            }
        };
        type_of.push(id);
    }
    ComponentTypes {
        d_components,
        cliques,
        types,
        type_of,
        attachment,
    }
}

/// Instance of the subproblem: find the best `S` with `S ∩ D = ∅` and
/// `|S| <= k`.
#[derive(Debug, Clone)]
pub struct NiceInstance {
    graph: WeightedGraph,
    k: usize,
    d: Vec<Vertex>,
}

impl NiceInstance {
    /// Checks unit weights, that `d` is a cluster vertex deletion set with at
    /// most `k` components, and niceness: every twin class outside `d` with
    /// more than `k` vertices has no neighbor in `d`.
    pub fn new(graph: WeightedGraph, k: usize, d: &[Vertex]) -> Result<Self> {
        if !graph.is_unit_weight() {
            return Err(Error::precondition(
                "the cvd solver handles unweighted graphs only",
            ));
        }
        let mut d = d.to_vec();
        d.sort_unstable();
        d.dedup();
        if d.iter().any(|&v| v >= graph.vertex_count()) {
            return Err(Error::precondition(
                "deletion set names a vertex out of range",
            ));
        }
        if !is_cluster_deletion_set(&graph, &d) {
            return Err(Error::precondition(
                "the given set is not a cluster vertex deletion set",
            ));
        }
        let inside: Vec<bool> = graph.mask_of(&d).iter().map(|&x| !x).collect();
        if components_masked(&graph, &inside).len() > k {
            return Err(Error::precondition("G[D] has more than k components"));
        }
        if large_attached_class(&graph, k, &graph.mask_of(&d)).is_some() {
            return Err(Error::precondition("instance is not nice"));
        }
        Ok(NiceInstance { graph, k, d })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> &[Vertex] {
        &self.d
    }
}

/// Part outside `D` of the first twin class with more than `k` such vertices
/// and a neighbor in `D`.
fn large_attached_class(g: &WeightedGraph, k: usize, in_d: &[bool]) -> Option<Vec<Vertex>> {
    twin_classes(g).classes.into_iter().find_map(|class| {
        let part: Vec<Vertex> = class.into_iter().filter(|&v| !in_d[v]).collect();
        let attached = part
            .iter()
            .any(|&v| g.neighbors(v).iter().any(|&u| in_d[u]));
        (part.len() > k && attached).then_some(part)
    })
}

/// Attachment classes of one candidate clique, each sorted so that deletions
/// take the smallest ids first.
struct CliqueChoice {
    classes: Vec<Vec<Vertex>>,
}

/// Best `S` with `S ∩ D = ∅` and `|S| <= k`.
///
/// Only the `k` largest cliques of every type are considered (ties broken by
/// smallest clique id). Within a chosen clique, vertices with the same
/// attachment are interchangeable, so only deletion counts per attachment
/// class are enumerated. Every candidate is evaluated exactly.
pub fn solve_subvicvd(inst: &NiceInstance) -> Solution {
    let g = &inst.graph;
    let k = inst.k;
    let ct = component_types(g, &inst.d);
    let mut by_type: Vec<Vec<usize>> = vec![Vec::new(); ct.types.len()];
    for (id, &ty) in ct.type_of.iter().enumerate() {
        by_type[ty].push(id);
    }
    let mut candidates: Vec<usize> = Vec::new();
    for ids in &mut by_type {
        ids.sort_by_key(|&id| (std::cmp::Reverse(ct.cliques[id].len()), id));
        candidates.extend(ids.iter().take(k));
    }
    candidates.sort_unstable();
    let choices: Vec<CliqueChoice> = candidates
        .iter()
        .map(|&id| {
            let mut classes: BTreeMap<&Vec<usize>, Vec<Vertex>> = BTreeMap::new();
            for &v in &ct.cliques[id] {
                if !ct.attachment[v].is_empty() {
                    classes.entry(&ct.attachment[v]).or_default().push(v);
                }
            }
            CliqueChoice {
                classes: classes.into_values().collect(),
            }
        })
        .collect();
    let mut best = evaluate(g, &[]);
    let mut current = Vec::new();
    enumerate(g, &choices, 0, 0, k, &mut current, &mut best);
    best
}

fn enumerate(
    g: &WeightedGraph,
    choices: &[CliqueChoice],
    clique: usize,
    class: usize,
    budget: usize,
    current: &mut Vec<Vertex>,
    best: &mut Solution,
) {
    if clique == choices.len() {
        let mut s = current.clone();
        s.sort_unstable();
        *best = better(best.clone(), evaluate(g, &s));
        return;
    }
    let classes = &choices[clique].classes;
    if class == classes.len() {
        enumerate(g, choices, clique + 1, 0, budget, current, best);
        return;
    }
    let members = &classes[class];
    for take in 0..=budget.min(members.len()) {
        current.extend_from_slice(&members[..take]);
        enumerate(g, choices, clique, class + 1, budget - take, current, best);
        current.truncate(current.len() - take);
    }
}

/// Optimal unweighted solution given a cluster vertex deletion set `d`.
pub fn vi_cvd(g: &WeightedGraph, d: &[Vertex]) -> Result<Solution> {
    vi_cvd_with(g, d, &Limits::default())
}

pub fn vi_cvd_with(g: &WeightedGraph, d: &[Vertex], limits: &Limits) -> Result<Solution> {
    if !g.is_unit_weight() {
        return Err(Error::precondition(
            "the cvd solver handles unweighted graphs only",
        ));
    }
    let mut d = d.to_vec();
    d.sort_unstable();
    d.dedup();
    if d.iter().any(|&v| v >= g.vertex_count()) {
        return Err(Error::precondition(
            "deletion set names a vertex out of range",
        ));
    }
    if !is_cluster_deletion_set(g, &d) {
        return Err(Error::precondition(
            "the given set is not a cluster vertex deletion set",
        ));
    }
    let k = d.len();
    Error::check_cap("cluster deletion set size", k, limits.cvd_size)?;
    if g.vertex_count() == 0 {
        return Ok(evaluate(g, &[]));
    }

    let classes = classes_of_largest_clique(g, &d);
    Error::check_cap(
        "twin classes in the largest clique",
        classes.len(),
        limits.twin_classes.min(63),
    )?;
    let guesses: Vec<(u64, u64)> = (0..1u64 << classes.len())
        .flat_map(|c| (0..1u64 << k).map(move |s| (c, s)))
        .collect();
    let best = guesses
        .into_par_iter()
        .map(|(c_mask, d_mask)| {
            let mut removed: Vec<Vertex> = (0..classes.len())
                .filter(|&i| c_mask >> i & 1 == 1)
                .flat_map(|i| classes[i].iter().copied())
                .collect();
            removed.extend((0..k).filter(|&i| d_mask >> i & 1 == 1).map(|i| d[i]));
            removed.sort_unstable();
            let d_rest: Vec<Vertex> = (0..k)
                .filter(|&i| d_mask >> i & 1 == 0)
                .map(|i| d[i])
                .collect();
            solve_guess(g, k, &removed, &d_rest)
        })
        .reduce_with(better)
        .expect("at least one guess");
    Ok(evaluate(g, &strip_redundant(g, &best.deleted)))
}

/// Within a largest clique `C` of `g - d` (smallest id on ties), the parts
/// inside `C` of the twin classes of `g`.
fn classes_of_largest_clique(g: &WeightedGraph, d: &[Vertex]) -> Vec<Vec<Vertex>> {
    let cliques = components_masked(g, &g.mask_of(d));
    let Some(largest) = cliques.iter().rev().max_by_key(|c| c.len()) else {
        return Vec::new();
    };
    let in_c = g.mask_of(largest);
    twin_classes(g)
        .classes
        .into_iter()
        .map(|class| class.into_iter().filter(|&v| in_c[v]).collect::<Vec<_>>())
        .filter(|part| !part.is_empty())
        .collect()
}

/// Deletes `removed`, builds the nice instance on what is left and maps its
/// answer back to a set of `g`.
fn solve_guess(g: &WeightedGraph, k: usize, removed: &[Vertex], d_rest: &[Vertex]) -> Solution {
    let (h, keep) = g.remove_vertices(removed);
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let mut in_d = vec![false; h.vertex_count()];
    for &v in d_rest {
        in_d[index[v]] = true;
    }
    while let Some(part) = large_attached_class(&h, k, &in_d) {
        for v in part {
            in_d[v] = true;
        }
    }
    let d_plus: Vec<Vertex> = h.vertices().filter(|&v| in_d[v]).collect();
    let inst = NiceInstance::new(h, k, &d_plus).expect("enlarged guess is a nice instance");
    let inner = solve_subvicvd(&inst);
    let mut s: Vec<Vertex> = removed.to_vec();
    s.extend(inner.deleted.iter().map(|&v| keep[v]));
    s.sort_unstable();
    evaluate(g, &s)
}
