//! Unary-weight dynamic program over a clique-width expression.
//!
//! A state of node `t` describes `G_t - S` for some `S ⊆ V_t`: for every
//! label set `L`, `scom(L)` is the total weight of the components whose
//! labels are exactly `L` and `cmax(L)` the heaviest of them. The deleted
//! weight is `W_t - Σ scom(L)`, so the objective of a root state is
//! `(W - Σ scom) + max cmax`. Tables hold only the reachable states.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{evaluate, Solution, Vertex, WeightedGraph};
use crate::params::{CExpression, CNode};
use crate::Limits;

/// Label set as a bitmask: bit `i - 1` stands for label `i`.
pub type LabelSet = u32;

fn bit(label: usize) -> LabelSet {
    1 << (label - 1)
}

/// Sparse `(scom, cmax)` pair. Entries are sorted by label set and only
/// label sets with `scom > 0` are stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CwState {
    entries: Vec<(LabelSet, u64, u64)>,
}

impl CwState {
    /// Builds a state from `(L, scom, cmax)` triples; zero entries are
    /// dropped and repeated label sets are folded (sum and max).
    pub fn from_entries(entries: impl IntoIterator<Item = (LabelSet, u64, u64)>) -> Self {
        let mut map: BTreeMap<LabelSet, (u64, u64)> = BTreeMap::new();
        for (l, s, m) in entries {
            if s == 0 {
                continue;
            }
            let e = map.entry(l).or_insert((0, 0));
            e.0 += s;
            e.1 = e.1.max(m);
        }
        CwState {
            entries: map.into_iter().map(|(l, (s, m))| (l, s, m)).collect(),
        }
    }

    pub fn entries(&self) -> &[(LabelSet, u64, u64)] {
        &self.entries
    }

    pub fn scom(&self, l: LabelSet) -> u64 {
        self.entries.iter().find(|e| e.0 == l).map_or(0, |e| e.1)
    }

    pub fn cmax(&self, l: LabelSet) -> u64 {
        self.entries.iter().find(|e| e.0 == l).map_or(0, |e| e.2)
    }

    /// Total weight of the components containing a `label`-vertex.
    pub fn scom_label(&self, label: usize) -> u64 {
        self.entries
            .iter()
            .filter(|e| e.0 & bit(label) != 0)
            .map(|e| e.1)
            .sum()
    }

    pub fn kept_weight(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn max_component(&self) -> u64 {
        self.entries.iter().map(|e| e.2).max().unwrap_or(0)
    }
}

/// Keep or delete the single vertex of weight `w` and label `i`.
pub fn cw_leaf(i: usize, w: u64) -> Vec<CwState> {
    vec![CwState::from_entries([(bit(i), w, w)]), CwState::default()]
}

pub fn cw_union_pair(a: &CwState, b: &CwState) -> CwState {
    CwState::from_entries(a.entries.iter().chain(&b.entries).copied())
}

pub fn cw_relabel_state(from: usize, to: usize, a: &CwState) -> CwState {
    CwState::from_entries(a.entries.iter().map(|&(l, s, m)| {
        if l & bit(from) != 0 {
            ((l & !bit(from)) | bit(to), s, m)
        } else {
            (l, s, m)
        }
    }))
}

pub fn cw_join_state(i: usize, j: usize, a: &CwState) -> CwState {
    if a.scom_label(i) == 0 || a.scom_label(j) == 0 {
        return a.clone();
    }
    let touches = bit(i) | bit(j);
    let mut merged_labels = 0;
    let mut merged_weight = 0;
    let mut rest = Vec::new();
    for &(l, s, m) in &a.entries {
        if l & touches != 0 {
            merged_labels |= l;
            merged_weight += s;
        } else {
            rest.push((l, s, m));
        }
    }
    rest.push((merged_labels, merged_weight, merged_weight));
    CwState::from_entries(rest)
}

/// Every pairwise combination, deduplicated, in first-seen order.
pub fn cw_union(a: &[CwState], b: &[CwState]) -> Vec<CwState> {
    dedup(
        a.iter()
            .flat_map(|x| b.iter().map(move |y| cw_union_pair(x, y))),
    )
}

pub fn cw_relabel(from: usize, to: usize, a: &[CwState]) -> Vec<CwState> {
    dedup(a.iter().map(|x| cw_relabel_state(from, to, x)))
}

pub fn cw_join(i: usize, j: usize, a: &[CwState]) -> Vec<CwState> {
    dedup(a.iter().map(|x| cw_join_state(i, j, x)))
}

fn dedup(states: impl Iterator<Item = CwState>) -> Vec<CwState> {
    let mut seen = std::collections::BTreeSet::new();
    states.filter(|s| seen.insert(s.clone())).collect()
}

#[derive(Debug, Clone, Copy)]
enum Pred {
    Leaf { kept: bool },
    Union(usize, usize),
    Unary(usize),
}

/// Reachable states of one node with one predecessor each.
#[derive(Debug, Clone, Default)]
pub struct CwTable {
    pub states: Vec<CwState>,
    preds: Vec<Pred>,
}

impl CwTable {
    fn push(&mut self, index: &mut BTreeMap<CwState, usize>, state: CwState, pred: Pred) {
        if !index.contains_key(&state) {
            index.insert(state.clone(), self.states.len());
            self.states.push(state);
            self.preds.push(pred);
        }
    }
}

fn check_weights(expr: &CExpression, weights: &[u64], limits: &Limits) -> Result<()> {
    if weights.len() != expr.leaf_count() {
        return Err(Error::precondition(format!(
            "{} weights for an expression with {} leaves",
            weights.len(),
            expr.leaf_count()
        )));
    }
    if weights.contains(&0) {
        return Err(Error::InvalidGraph(
            "vertex weights must be positive".into(),
        ));
    }
    Error::check_cap("label count", expr.label_count(), limits.cw_labels.min(32))?;
    let total = weights.iter().try_fold(0u64, |acc, &w| acc.checked_add(w));
    match total {
        Some(t) => Error::check_cap("total weight", t as usize, limits.unary_weight as usize),
        None => Err(Error::TooLarge {
            what: "total weight",
            value: u64::MAX,
            cap: limits.unary_weight,
        }),
    }
}

/// State tables of every node (indexed by node id).
pub fn cw_tables(expr: &CExpression, weights: &[u64]) -> Result<Vec<CwTable>> {
    cw_tables_with(expr, weights, &Limits::default())
}

pub fn cw_tables_with(
    expr: &CExpression,
    weights: &[u64],
    limits: &Limits,
) -> Result<Vec<CwTable>> {
    check_weights(expr, weights, limits)?;
    let mut tables: Vec<CwTable> = vec![CwTable::default(); expr.node_count()];
    for t in expr.post_order() {
        let mut table = CwTable::default();
        let mut index = BTreeMap::new();
        match expr.node(t) {
            CNode::Leaf(i) => {
                let w = weights[expr.leaf_vertex(t).expect("leaf")];
                let [kept, deleted]: [CwState; 2] =
                    cw_leaf(i, w).try_into().expect("two leaf states");
                table.push(&mut index, kept, Pred::Leaf { kept: true });
                table.push(&mut index, deleted, Pred::Leaf { kept: false });
            }
            CNode::Union(a, b) => {
                for (x, sa) in tables[a].states.iter().enumerate() {
                    for (y, sb) in tables[b].states.iter().enumerate() {
                        table.push(&mut index, cw_union_pair(sa, sb), Pred::Union(x, y));
                    }
                }
            }
            CNode::Relabel { from, to, child } => {
                for (x, s) in tables[child].states.iter().enumerate() {
                    table.push(&mut index, cw_relabel_state(from, to, s), Pred::Unary(x));
                }
            }
            CNode::Join { a, b, child } => {
                for (x, s) in tables[child].states.iter().enumerate() {
                    table.push(&mut index, cw_join_state(a, b, s), Pred::Unary(x));
                }
            }
        }
        tables[t] = table;
    }
    Ok(tables)
}

fn reconstruct(
    expr: &CExpression,
    tables: &[CwTable],
    t: usize,
    state: usize,
    out: &mut Vec<Vertex>,
) {
    match tables[t].preds[state] {
        Pred::Leaf { kept } => {
            if !kept {
                out.push(expr.leaf_vertex(t).expect("leaf"));
            }
        }
        Pred::Union(x, y) => {
            let children = expr.children(t);
            reconstruct(expr, tables, children[0], x, out);
            reconstruct(expr, tables, children[1], y, out);
        }
        Pred::Unary(x) => reconstruct(expr, tables, expr.children(t)[0], x, out),
    }
}

/// Optimal solution on the graph of `expr`, leaf `i` carrying `weights[i]`.
pub fn wvi_cw(expr: &CExpression, weights: &[u64]) -> Result<Solution> {
    wvi_cw_with(expr, weights, &Limits::default())
}

pub fn wvi_cw_with(expr: &CExpression, weights: &[u64], limits: &Limits) -> Result<Solution> {
    let tables = cw_tables_with(expr, weights, limits)?;
    let total: u64 = weights.iter().sum();
    let root = &tables[expr.root()];
    let (best, value) = root
        .states
        .iter()
        .enumerate()
        .map(|(x, s)| (x, total - s.kept_weight() + s.max_component()))
        .min_by_key(|&(x, v)| (v, x))
        .expect("the root table is never empty");
    let mut s = Vec::new();
    reconstruct(expr, &tables, expr.root(), best, &mut s);
    s.sort_unstable();
    let graph = expr.eval().graph.with_weights(weights.to_vec())?;
    let sol = evaluate(&graph, &s);
    assert_eq!(
        sol.objective, value,
        "reconstructed set does not attain the root state"
    );
    Ok(sol)
}

/// Like [`wvi_cw`], taking the weights from `g` after checking that the
/// expression evaluates to exactly `g`.
pub fn wvi_cw_graph(g: &WeightedGraph, expr: &CExpression) -> Result<Solution> {
    wvi_cw_graph_with(g, expr, &Limits::default())
}

pub fn wvi_cw_graph_with(
    g: &WeightedGraph,
    expr: &CExpression,
    limits: &Limits,
) -> Result<Solution> {
    let built = expr.eval().graph;
    if built.vertex_count() != g.vertex_count() || !built.edges().eq(g.edges()) {
        return Err(Error::precondition(
            "the expression does not evaluate to the graph",
        ));
    }
    wvi_cw_with(expr, g.weights(), limits)
}

/// Like [`wvi_cw_graph`] for an expression whose leaf `i` stands for vertex
/// `order[i]` of `g`. The certificate is reported in the ids of `g`.
pub fn wvi_cw_ordered(g: &WeightedGraph, expr: &CExpression, order: &[Vertex]) -> Result<Solution> {
    let n = g.vertex_count();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(Error::precondition(
                "leaf order is not a permutation of the vertices",
            ));
        }
        position[v] = i;
    }
    if order.len() != n {
        return Err(Error::precondition(
            "leaf order is not a permutation of the vertices",
        ));
    }
    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .map(|(u, v)| (position[u].min(position[v]), position[u].max(position[v])))
        .collect();
    edges.sort_unstable();
    let weights = order.iter().map(|&v| g.weight(v)).collect();
    let h = WeightedGraph::new(n, &edges, weights)?;
    let sol = wvi_cw_graph(&h, expr)?;
    let mut deleted: Vec<Vertex> = sol.deleted.iter().map(|&i| order[i]).collect();
    deleted.sort_unstable();
    Ok(evaluate(g, &deleted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::path;
    use crate::oracle::vi_exact;

    fn unit(expr: &CExpression) -> u64 {
        wvi_cw(expr, &vec![1; expr.leaf_count()]).unwrap().objective
    }

    #[test]
    fn cographs_from_their_decomposition() {
        use crate::graph::tests::{complete, cycle, star};
        use crate::params::modular_decomposition;
        let weighted =
            WeightedGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], vec![5, 1, 2, 7]).unwrap();
        for g in [complete(4), star(3), cycle(4), weighted] {
            let md = modular_decomposition(&g).unwrap();
            let (expr, order) = CExpression::cograph(&md).unwrap();
            assert!(expr.label_count() <= 2);
            let want = crate::oracle::wvi_exact(&g).unwrap().objective;
            assert_eq!(wvi_cw_ordered(&g, &expr, &order).unwrap().objective, want);
        }
        assert!(CExpression::cograph(&modular_decomposition(&path(4)).unwrap()).is_none());
    }

    #[test]
    fn examples() {
        assert_eq!(unit(&CExpression::parse("e1,2(u(o1,o2))").unwrap()), 2);
        assert_eq!(unit(&CExpression::parse("u(o1,o1)").unwrap()), 1);
        assert_eq!(
            unit(&CExpression::path(4)),
            vi_exact(&path(4)).unwrap().objective
        );
        assert_eq!(unit(&CExpression::path(3)), 2);
    }

    #[test]
    fn leaf_rule() {
        let states = cw_leaf(1, 5);
        assert_eq!(states[0].entries(), &[(1, 5, 5)]);
        assert_eq!(states[1], CwState::default());
        assert_eq!(cw_leaf(2, 1), cw_leaf(2, 1));
    }

    #[test]
    fn union_rule() {
        let x = cw_leaf(1, 2);
        assert_eq!(cw_union(&[CwState::default()], &x), x);
        assert_eq!(cw_union(&cw_leaf(1, 1), &cw_leaf(2, 1)).len(), 4);
        let two_k2 = CExpression::parse("u(e1,2(u(o1,o2)),e1,2(u(o1,o2)))").unwrap();
        assert_eq!(unit(&two_k2), 2);
    }

    #[test]
    fn relabel_rule() {
        assert_eq!(
            cw_relabel(1, 2, &[CwState::default()]),
            vec![CwState::default()]
        );
        let moved = cw_relabel_state(1, 2, &cw_leaf(1, 1)[0]);
        assert_eq!(moved.entries(), &[(0b10, 1, 1)]);
        // components {1}:2/2, {2}:3/3, {1,3}:4/4 and {2,3}:1/1 under ρ_{1,2}
        let s = CwState::from_entries([(0b001, 2, 2), (0b010, 3, 3), (0b101, 4, 4), (0b110, 1, 1)]);
        let r = cw_relabel_state(1, 2, &s);
        assert_eq!(r.entries(), &[(0b010, 5, 3), (0b110, 5, 4)]);
    }

    #[test]
    fn join_rule() {
        let only_deleted = CwState::from_entries([(0b10, 3, 3)]);
        assert_eq!(cw_join_state(1, 2, &only_deleted), only_deleted);
        let both = cw_union(&cw_leaf(1, 1)[..1], &cw_leaf(2, 1)[..1]);
        let joined = cw_join(1, 2, &both);
        assert_eq!(joined[0].entries(), &[(0b11, 2, 2)]);
        // a 3-component untouched by the join survives
        let s = CwState::from_entries([(0b001, 2, 1), (0b010, 1, 1), (0b100, 4, 4)]);
        assert_eq!(
            cw_join_state(1, 2, &s).entries(),
            &[(0b011, 3, 3), (0b100, 4, 4)]
        );
    }

    #[test]
    fn state_invariants() {
        let expr = CExpression::path(5);
        for table in cw_tables(&expr, &[1, 2, 3, 2, 1]).unwrap() {
            for s in &table.states {
                assert!(s.entries().iter().all(|&(_, sc, cm)| cm <= sc && cm > 0));
                assert!(s.kept_weight() <= 9);
            }
        }
    }

    #[test]
    fn graph_must_match() {
        let expr = CExpression::path(4);
        assert!(wvi_cw_graph(&path(4), &expr).is_ok());
        assert!(wvi_cw_graph(&path(5), &expr).is_err());
        assert!(wvi_cw(&expr, &[1, 1]).is_err());
    }
}
