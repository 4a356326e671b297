//! Multi-criteria edge utilities and the two ways of aggregating them.
//!
//! *Pareto-then-trees*: edges are compared by Pareto dominance of their
//! utility vectors, and the resulting edge relation drives the maximal tree
//! machinery. *Sum-then-Pareto*: each tree is scored by per-criterion sums
//! and trees are compared by Pareto dominance of the score vectors. Every
//! sum-then-Pareto maximal tree is also Pareto-then-trees maximal; the
//! converse fails in general.

use std::collections::BTreeMap;

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, UndirectedGraph};
use crate::relation::EdgeRelation;
use crate::solver::{
    canonical_order, oracle_maximal_trees, Instance, OracleCaps, UtilityAssignment,
};

/// Integer utility of every edge on each of `p >= 1` criteria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriteriaMatrix {
    names: Vec<String>,
    ground: Vec<EdgeId>,
    values: Vec<Vec<i64>>,
}

impl CriteriaMatrix {
    /// Values keyed by edge id; every graph edge needs exactly one value per criterion.
    pub fn new(
        graph: &UndirectedGraph,
        names: Vec<String>,
        values: &BTreeMap<String, Vec<i64>>,
    ) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::NoCriteria);
        }
        if let Some(unknown) = values.keys().find(|k| graph.edge_index(k).is_none()) {
            return Err(Error::UnknownEdge(unknown.clone()));
        }
        let mut rows = Vec::with_capacity(graph.edge_count());
        for id in graph.edge_ids() {
            let row = values
                .get(id.as_str())
                .ok_or_else(|| Error::MissingCriteria(id.0.clone()))?;
            if row.len() != names.len() {
                return Err(Error::CriteriaArity {
                    edge: id.0.clone(),
                    expected: names.len(),
                    found: row.len(),
                });
            }
            rows.push(row.clone());
        }
        Ok(CriteriaMatrix {
            names,
            ground: graph.edge_ids().cloned().collect(),
            values: rows,
        })
    }

    pub fn criteria(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ground(&self) -> &[EdgeId] {
        &self.ground
    }

    /// Utility vector of edge index `e`.
    pub fn row(&self, e: usize) -> &[i64] {
        &self.values[e]
    }

    pub fn to_map(&self) -> BTreeMap<String, Vec<i64>> {
        self.ground
            .iter()
            .zip(&self.values)
            .map(|(id, row)| (id.0.clone(), row.clone()))
            .collect()
    }
}

/// Per-criterion sums over a set of edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScoreVector(pub Vec<i64>);

/// `v` is at least `w` everywhere and differs somewhere.
pub fn pareto_dominates(v: &ScoreVector, w: &ScoreVector) -> Result<bool> {
    if v.0.len() != w.0.len() {
        return Err(Error::LengthMismatch(v.0.len(), w.0.len()));
    }
    Ok(v.0.iter().zip(&w.0).all(|(a, b)| a >= b) && v != w)
}

pub fn score_vector(criteria: &CriteriaMatrix, x: &EdgeSet) -> ScoreVector {
    let mut sums = vec![0; criteria.criteria()];
    for e in x.iter() {
        for (s, u) in sums.iter_mut().zip(criteria.row(e)) {
            *s += u;
        }
    }
    ScoreVector(sums)
}

/// Edge relation of Pareto dominance between utility vectors: strict when
/// dominating, indifferent when equal.
pub fn pareto_edge_relation(criteria: &CriteriaMatrix) -> EdgeRelation {
    let mut rel = EdgeRelation::new(criteria.ground.iter().cloned()).expect("ids are distinct");
    let n = criteria.ground.len();
    for e in 0..n {
        for f in e + 1..n {
            let (ve, vf) = (
                ScoreVector(criteria.row(e).to_vec()),
                ScoreVector(criteria.row(f).to_vec()),
            );
            let result = if ve == vf {
                rel.add_indifferent(e, f)
            } else if pareto_dominates(&ve, &vf).expect("rows share one arity") {
                rel.add_strict(e, f)
            } else if pareto_dominates(&vf, &ve).expect("rows share one arity") {
                rel.add_strict(f, e)
            } else {
                Ok(())
            };
            result.expect("each pair is classified once");
        }
    }
    debug_assert!(rel.is_p_acyclic());
    rel
}

/// Total preorder of a single utility: strict for `>`, indifferent for `=`.
pub fn utility_edge_relation(
    ground: &[EdgeId],
    utility: &UtilityAssignment,
) -> Result<EdgeRelation> {
    if ground.len() != utility.0.len() {
        return Err(Error::LengthMismatch(ground.len(), utility.0.len()));
    }
    let mut rel = EdgeRelation::new(ground.iter().cloned())?;
    let u = &utility.0;
    for e in 0..u.len() {
        for f in e + 1..u.len() {
            match u[e].cmp(&u[f]) {
                std::cmp::Ordering::Greater => rel.add_strict(e, f)?,
                std::cmp::Ordering::Less => rel.add_strict(f, e)?,
                std::cmp::Ordering::Equal => rel.add_indifferent(e, f)?,
            }
        }
    }
    Ok(rel)
}

/// Spanning trees whose score vector no other tree Pareto-dominates.
pub fn sigma_pareto_maximal_trees(
    graph: &UndirectedGraph,
    criteria: &CriteriaMatrix,
    cap: usize,
) -> Result<Vec<EdgeSet>> {
    let trees = graph.enumerate_spanning_trees(cap)?;
    let scores: Vec<ScoreVector> = trees.iter().map(|t| score_vector(criteria, t)).collect();
    let mut maximal = Vec::new();
    for (i, tree) in trees.iter().enumerate() {
        let mut dominated = false;
        for other in &scores {
            if pareto_dominates(other, &scores[i])? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            maximal.push(tree.clone());
        }
    }
    canonical_order(graph, &mut maximal);
    Ok(maximal)
}

/// Comparison of the sum-then-Pareto and Pareto-then-trees maximal sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionReport {
    /// Every sum-then-Pareto maximal tree is Pareto-then-trees maximal.
    pub holds: bool,
    /// Pareto-then-trees maximal trees missing from the sum-then-Pareto set.
    pub strict_witnesses: Vec<EdgeSet>,
    /// Sum-then-Pareto maximal trees that are not Pareto-then-trees maximal.
    pub violations: Vec<EdgeSet>,
    pub sum_pareto: Vec<EdgeSet>,
    pub pareto_trees: Vec<EdgeSet>,
}

pub fn inclusion_check(
    graph: &UndirectedGraph,
    criteria: &CriteriaMatrix,
    caps: OracleCaps,
) -> Result<InclusionReport> {
    let sum_pareto = sigma_pareto_maximal_trees(graph, criteria, caps.trees)?;
    let inst = Instance::new(graph.clone(), pareto_edge_relation(criteria))?;
    let pareto_trees = oracle_maximal_trees(&inst, caps)?;
    let violations: Vec<EdgeSet> = sum_pareto
        .iter()
        .filter(|t| !pareto_trees.contains(t))
        .cloned()
        .collect();
    let strict_witnesses = pareto_trees
        .iter()
        .filter(|t| !sum_pareto.contains(t))
        .cloned()
        .collect();
    Ok(InclusionReport {
        holds: violations.is_empty(),
        strict_witnesses,
        violations,
        sum_pareto,
        pareto_trees,
    })
}
