mod common;

use std::collections::BTreeSet;

use common::{
    brute_best_trees, brute_maximal_trees, brute_spanning_trees, random_criteria, rng, union_of,
};
use maxtree_core::multiobjective::{
    inclusion_check, pareto_edge_relation, score_vector, sigma_pareto_maximal_trees,
    utility_edge_relation,
};
use maxtree_core::random::random_connected_graph;
use maxtree_core::solver::UtilityAssignment;
use maxtree_core::{gpc, EdgeId, EdgeSet, Instance, OracleCaps, TieBreak};
use proptest::prelude::*;
use rand::Rng;

fn dominates(v: &[i64], w: &[i64]) -> bool {
    v.iter().zip(w).all(|(a, b)| a >= b) && v != w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pareto_relation_follows_componentwise_order(seed in any::<u64>(), p in 1usize..4) {
        let mut r = rng(seed);
        let g = random_connected_graph(&mut r, 4, 8);
        let criteria = random_criteria(&mut r, &g, p, 3);
        let rel = pareto_edge_relation(&criteria);
        for x in 0..g.edge_count() {
            for y in 0..g.edge_count() {
                let (u, v) = (criteria.row(x), criteria.row(y));
                prop_assert_eq!(rel.prefers(x, y), dominates(u, v));
                if x != y {
                    prop_assert_eq!(rel.weakly_prefers(x, y) && rel.weakly_prefers(y, x), u == v);
                }
            }
        }
    }

    #[test]
    fn sum_pareto_trees_match_brute_force(seed in any::<u64>(), p in 1usize..4) {
        let mut r = rng(seed);
        let vertices = r.random_range(2..6);
        let edges = r.random_range(vertices - 1..9);
        let g = random_connected_graph(&mut r, vertices, edges);
        let criteria = random_criteria(&mut r, &g, p, 4);
        let trees = brute_spanning_trees(&g);
        let score = |t: &Vec<usize>| -> Vec<i64> {
            (0..p).map(|k| t.iter().map(|&e| criteria.row(e)[k]).sum()).collect()
        };
        let expected: BTreeSet<Vec<usize>> = trees
            .iter()
            .filter(|t| trees.iter().all(|o| !dominates(&score(o), &score(t))))
            .cloned()
            .collect();
        let found = sigma_pareto_maximal_trees(&g, &criteria, 10_000).unwrap();
        prop_assert_eq!(found.iter().map(|t| t.iter().collect()).collect::<BTreeSet<Vec<usize>>>(), expected);
        for t in &found {
            prop_assert_eq!(score_vector(&criteria, t).0, score(&t.iter().collect()));
        }
    }

    #[test]
    fn sum_pareto_trees_are_pareto_maximal_trees(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vertices = r.random_range(2..6);
        let edges = r.random_range(vertices - 1..8);
        let g = random_connected_graph(&mut r, vertices, edges);
        let criteria = random_criteria(&mut r, &g, 2, 5);
        let report = inclusion_check(&g, &criteria, OracleCaps::default()).unwrap();
        prop_assert!(report.holds, "violations: {:?}", report.violations);
        let inst = Instance::new(g.clone(), pareto_edge_relation(&criteria)).unwrap();
        let brute = brute_maximal_trees(&inst);
        for t in &report.sum_pareto {
            prop_assert!(brute.contains(&t.iter().collect::<Vec<_>>()));
        }
        prop_assert_eq!(report.pareto_trees.len(), brute.len());
    }

    #[test]
    fn single_utility_consistency_is_union_of_best_trees(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vertices = r.random_range(2..7);
        let edges = r.random_range(vertices - 1..11);
        let g = random_connected_graph(&mut r, vertices, edges);
        let utility: Vec<i64> = (0..g.edge_count()).map(|_| r.random_range(-3..=3)).collect();
        let ground: Vec<EdgeId> = g.edge_ids().cloned().collect();
        let rel = utility_edge_relation(&ground, &UtilityAssignment(utility.clone())).unwrap();
        let inst = Instance::new(g.clone(), rel).unwrap();
        let expected = union_of(&brute_best_trees(&g, &utility));
        let found = gpc(&inst, &TieBreak::Lexicographic);
        prop_assert_eq!(found.edges().unwrap(), &EdgeSet::from_indices(g.edge_count(), expected));
    }
}
