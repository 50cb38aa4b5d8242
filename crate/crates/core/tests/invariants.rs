mod common;

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vintegrity::cvd::{solve_subvicvd, vi_cvd, NiceInstance};
use vintegrity::cw::wvi_cw_ordered;
use vintegrity::mw::{mw_node_transition, mw_node_transition_reference, wvi_mw};
use vintegrity::oracle::{feasible_vi_exact, vi_exact, wvi_exact, FeasibilityConstraint};
use vintegrity::params::{
    minimum_cluster_vertex_deletion, minimum_twin_cover, modular_decomposition, CExpression,
};
use vintegrity::quotient::{wvi_nd, wvi_tc};
use vintegrity::reductions::{gen_partition_to_subdivided_star, gen_vc_to_planar_bipartite};
use vintegrity::{connected_components, WeightedGraph};

#[test]
fn nd_matches_oracle_with_large_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..60 {
        let n = rng.gen_range(2..=14);
        let weights = common::random_weights(&mut rng, n, 1_000_000);
        let g = common::random_connected(&mut rng, n, [0.15, 0.5, 0.85][i % 3], weights);
        let want = wvi_exact(&g).unwrap().objective;
        match wvi_nd(&g) {
            Ok(sol) => assert_eq!(sol.objective, want, "{g:?}"),
            Err(e) => panic!("nd refused {g:?}: {e}"),
        }
    }
}

#[test]
fn twin_cover_matches_nd() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..80 {
        let n = rng.gen_range(1..=11);
        let weights = common::random_weights(&mut rng, n, 20);
        let density = rng.gen_range(0.2..0.9);
        let g = common::random_connected(&mut rng, n, density, weights);
        let cover = minimum_twin_cover(&g, n).unwrap();
        let tc = wvi_tc(&g, &cover).unwrap();
        let nd = wvi_nd(&g).unwrap();
        assert_eq!(tc.objective, nd.objective, "{g:?} cover {cover:?}");
    }
}

#[test]
fn mw_matches_oracle_on_small_graphs() {
    for n in 1..=5 {
        for g in common::all_graphs(n) {
            let md = modular_decomposition(&g).unwrap();
            assert_eq!(
                wvi_mw(&g, &md).unwrap().objective,
                vi_exact(&g).unwrap().objective,
                "{g:?}"
            );
        }
    }
}

#[test]
fn mw_transition_matches_literal_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let c = rng.gen_range(2..=6);
        let density = rng.gen_range(0.1..0.9);
        let h = common::random_graph(&mut rng, c, density);
        let module_weight = common::random_weights(&mut rng, c, 6);
        // child values need not come from real modules
        let child_mu: Vec<Option<u64>> = module_weight
            .iter()
            .map(|&w| rng.gen_bool(0.8).then(|| rng.gen_range(0..=w)))
            .collect();
        let ell = rng.gen_range(1..=12);
        let fast = mw_node_transition(&h, &module_weight, &child_mu, ell);
        let slow = mw_node_transition_reference(&h, &module_weight, &child_mu, ell);
        assert_eq!(
            fast.value, slow,
            "{h:?} {module_weight:?} {child_mu:?} l={ell}"
        );
    }
}

#[test]
fn cograph_expressions_match_oracle() {
    let mut cographs = 0;
    for n in 1..=5 {
        for g in common::all_graphs(n) {
            let md = modular_decomposition(&g).unwrap();
            if let Some((expr, order)) = CExpression::cograph(&md) {
                cographs += 1;
                assert_eq!(
                    wvi_cw_ordered(&g, &expr, &order).unwrap().objective,
                    vi_exact(&g).unwrap().objective
                );
            }
        }
    }
    assert!(cographs > 0);
}

/// Largest component of `g - d`, smallest id on ties.
fn largest_clique(g: &WeightedGraph, d: &[usize]) -> Vec<usize> {
    let comps = connected_components(g, d);
    comps
        .iter()
        .rev()
        .max_by_key(|c| c.len())
        .cloned()
        .unwrap_or_default()
}

#[test]
fn cvd_certificates_stay_near_the_largest_clique() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut audited = 0;
    while audited < 150 {
        let n = rng.gen_range(3..=11);
        let density = rng.gen_range(0.3..0.95);
        let g = common::random_connected(&mut rng, n, density, vec![1; n]);
        let Some(d) = minimum_cluster_vertex_deletion(&g, 3) else {
            continue;
        };
        audited += 1;
        let sol = vi_cvd(&g, &d).unwrap();
        assert_eq!(
            sol.objective,
            vi_exact(&g).unwrap().objective,
            "{g:?} D={d:?}"
        );
        let c = largest_clique(&g, &d);
        let outside = sol.deleted.iter().filter(|v| !c.contains(v)).count();
        assert!(outside <= 2 * d.len(), "{g:?} D={d:?} S={:?}", sol.deleted);
    }
}

#[test]
fn subproblem_matches_constrained_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checked = 0;
    let mut tries = 0;
    while checked < 150 {
        tries += 1;
        assert!(tries < 100_000, "too few nice instances");
        let n = rng.gen_range(3..=12);
        let density = rng.gen_range(0.2..0.8);
        let g = common::random_graph(&mut rng, n, density);
        let Some(d) = minimum_cluster_vertex_deletion(&g, 3) else {
            continue;
        };
        let k = d.len() + rng.gen_range(0..=1);
        let Ok(inst) = NiceInstance::new(g.clone(), k, &d) else {
            continue;
        };
        checked += 1;
        let ours = solve_subvicvd(&inst);
        assert!(ours.deleted.len() <= k && ours.deleted.iter().all(|v| !d.contains(v)));
        let want = feasible_vi_exact(
            &g,
            &FeasibilityConstraint {
                forbidden: d.clone(),
                budget: Some(k),
            },
        )
        .unwrap();
        assert_eq!(ours.objective, want.objective, "{g:?} D={d:?} k={k}");
    }
}

fn bfs(g: &WeightedGraph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &u in g.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
        }
    }
    dist
}

#[test]
fn partition_instance_is_a_subdivided_star() {
    for items in [
        vec![1, 1],
        vec![1, 1, 2],
        vec![3, 1, 4, 1, 5],
        vec![2, 2, 2, 2],
    ] {
        let inst = gen_partition_to_subdivided_star(&items).unwrap();
        let g = &inst.graph;
        assert_eq!(g.vertex_count(), 2 * items.len() + 3);
        assert_eq!(g.edge_count(), g.vertex_count() - 1);
        assert!(g.is_connected());
        let diameter = g
            .vertices()
            .map(|v| *bfs(g, v).iter().max().unwrap())
            .max()
            .unwrap();
        assert_eq!(diameter, 4);
    }
}

#[test]
fn vertex_cover_instance_is_bipartite_with_degree_four() {
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
    let prism = WeightedGraph::unit(
        6,
        &[
            (0, 1),
            (0, 2),
            (1, 2),
            (3, 4),
            (3, 5),
            (4, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap();
    for (h, p) in [(prism.clone(), 2), (k33, 3), (prism, 5)] {
        let inst = gen_vc_to_planar_bipartite(&h, p).unwrap();
        let g = &inst.graph;
        assert!(g.is_connected());
        assert!(g.vertices().all(|v| g.degree(v) <= 4));
        let dist = bfs(g, 0);
        assert!(g.edges().all(|(u, v)| dist[u] % 2 != dist[v] % 2));
        assert_eq!(inst.budget, 3 * p + 10);
    }
}
