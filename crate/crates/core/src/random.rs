//! Seeded random instances for property checks and benchmarks.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{EdgeId, UndirectedGraph, VertexId};
use crate::relation::EdgeRelation;
use crate::solver::Instance;

fn vertex_ids(count: usize) -> Vec<VertexId> {
    (0..count).map(|i| VertexId(format!("v{i}"))).collect()
}

fn edge_id(i: usize) -> EdgeId {
    EdgeId(format!("e{i}"))
}

/// `edges` uniformly random non-loop edges (parallel edges allowed) on
/// `vertices >= 2` vertices. Connectivity is left to chance.
pub fn random_multigraph<R: Rng>(rng: &mut R, vertices: usize, edges: usize) -> UndirectedGraph {
    let ids = vertex_ids(vertices);
    let list: Vec<_> = (0..edges)
        .map(|i| {
            let u = rng.random_range(0..vertices);
            let mut v = rng.random_range(0..vertices - 1);
            if v >= u {
                v += 1;
            }
            (edge_id(i), ids[u].clone(), ids[v].clone())
        })
        .collect();
    UndirectedGraph::new(ids, list).expect("generated graph is well formed")
}

/// A random spanning tree plus `edges - (vertices - 1)` extra random edges.
pub fn random_connected_graph<R: Rng>(
    rng: &mut R,
    vertices: usize,
    edges: usize,
) -> UndirectedGraph {
    assert!(edges + 1 >= vertices, "too few edges to connect the graph");
    let ids = vertex_ids(vertices);
    let mut order: Vec<usize> = (0..vertices).collect();
    order.shuffle(rng);
    let mut list = Vec::with_capacity(edges);
    for i in 1..vertices {
        let parent = order[rng.random_range(0..i)];
        list.push((order[i], parent));
    }
    while list.len() < edges {
        let u = rng.random_range(0..vertices);
        let v = rng.random_range(0..vertices);
        if u != v {
            list.push((u, v));
        }
    }
    list.shuffle(rng);
    UndirectedGraph::new(
        ids.clone(),
        list.into_iter()
            .enumerate()
            .map(|(i, (u, v))| (edge_id(i), ids[u].clone(), ids[v].clone())),
    )
    .expect("generated graph is well formed")
}

/// Relation oriented along a random permutation: each ordered pair becomes
/// strict with probability `strict`, otherwise indifferent with probability
/// `indifferent`. Always P-acyclic.
pub fn random_relation<R: Rng>(
    rng: &mut R,
    ground: &[EdgeId],
    strict: f64,
    indifferent: f64,
) -> EdgeRelation {
    let mut rel = EdgeRelation::new(ground.iter().cloned()).expect("distinct ids");
    let mut order: Vec<usize> = (0..ground.len()).collect();
    order.shuffle(rng);
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if rng.random_bool(strict) {
                rel.add_strict(order[i], order[j]).expect("fresh pair");
            } else if rng.random_bool(indifferent) {
                rel.add_indifferent(order[i], order[j]).expect("fresh pair");
            }
        }
    }
    rel
}

/// Relation with exactly `arcs` strict pairs drawn uniformly among the
/// pairs compatible with a random permutation.
pub fn random_relation_with_arcs<R: Rng>(
    rng: &mut R,
    ground: &[EdgeId],
    arcs: usize,
) -> EdgeRelation {
    let n = ground.len();
    assert!(arcs <= n * n.saturating_sub(1) / 2, "more arcs than pairs");
    let mut rel = EdgeRelation::new(ground.iter().cloned()).expect("distinct ids");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut seen = HashSet::with_capacity(arcs);
    while seen.len() < arcs {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i < j && seen.insert((i, j)) {
            rel.add_strict(order[i], order[j]).expect("fresh pair");
        }
    }
    rel
}

/// Small instance: `2..=max_vertices` vertices, `1..=max_edges` edges and a
/// relation of random density.
pub fn random_small_instance<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_edges: usize,
) -> Instance {
    let vertices = rng.random_range(2..=max_vertices);
    let edges = rng.random_range(1..=max_edges);
    let graph = random_multigraph(rng, vertices, edges);
    let ground: Vec<EdgeId> = graph.edge_ids().cloned().collect();
    let strict = rng.random_range(0.0..0.9);
    let relation = random_relation(rng, &ground, strict, 0.3);
    Instance::new(graph, relation).expect("generated instance is valid")
}
