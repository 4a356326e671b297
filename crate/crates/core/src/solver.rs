//! Maximal spanning trees for relations whose maximal set is fixed by the
//! greedy-constructibility relation on edge subsets.
//!
//! A subset `x` is *certified* when some linear extension of the edge
//! relation makes every edge outside `x` close a cycle with the edges of `x`
//! placed before it. A certified subset is weakly preferred to every subset;
//! the induced relation on subsets is therefore determined by certification
//! alone and is never materialized.

use std::cmp::Reverse;
use std::collections::HashSet;

use crate::edge_set::{DisjointSets, EdgeSet};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::relation::{EdgeRelation, FundamentalKind, LinearExtension, TieBreak};

/// A graph paired with a P-acyclic relation over exactly its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: UndirectedGraph,
    relation: EdgeRelation,
}

impl Instance {
    /// The relation's ground set must list the graph's edge ids in graph order.
    pub fn new(graph: UndirectedGraph, relation: EdgeRelation) -> Result<Self> {
        if relation.len() != graph.edge_count()
            || !graph.edge_ids().zip(relation.ground()).all(|(a, b)| a == b)
        {
            return Err(Error::GroundMismatch);
        }
        relation.require_p_acyclic()?;
        Ok(Instance { graph, relation })
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn relation(&self) -> &EdgeRelation {
        &self.relation
    }

    /// Instance size in the `|V| + |E| + |≻|` sense.
    pub fn size(&self) -> usize {
        self.graph.vertex_count() + self.graph.edge_count() + self.relation.strict_count()
    }
}

/// Limits on exhaustive oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub extensions: usize,
    pub trees: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            extensions: 100_000,
            trees: 10_000,
        }
    }
}

impl OracleCaps {
    pub fn uniform(cap: usize) -> Self {
        OracleCaps {
            extensions: cap,
            trees: cap,
        }
    }
}

/// Integer utility per edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityAssignment(pub Vec<i64>);

/// `u(e_i) = |E| - i` along the extension (1-based `i`).
pub fn utilities_from_extension(ext: &LinearExtension) -> UtilityAssignment {
    let n = ext.len();
    let mut u = vec![0; n];
    for (i, &e) in ext.as_slice().iter().enumerate() {
        u[e] = (n - (i + 1)) as i64;
    }
    UtilityAssignment(u)
}

/// One maximal spanning tree, or `None` when the graph is disconnected.
pub fn solve(inst: &Instance, tie_break: &TieBreak) -> Result<Option<EdgeSet>> {
    let ext = inst.relation.greedy_linear_extension(tie_break)?;
    let utility = utilities_from_extension(&ext);
    let mut order: Vec<usize> = (0..inst.graph.edge_count()).collect();
    order.sort_by_key(|&e| Reverse(utility.0[e]));
    Ok(inst.graph.kruskal_by_order(&order))
}

/// A witness that `subject` is greedily constructible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KCertificate {
    pub subject: EdgeSet,
    pub witness: LinearExtension,
}

impl KCertificate {
    /// Re-checks the witness independently of how it was found.
    pub fn verify(&self, inst: &Instance) -> bool {
        if !self.witness.extends(&inst.relation) {
            return false;
        }
        let mut dsu = DisjointSets::new(inst.graph.vertex_count());
        let mut cyclic = false;
        for &e in self.witness.as_slice() {
            let (u, v) = inst.graph.edge(e).ends;
            if self.subject.contains(e) {
                cyclic |= !dsu.union(u, v);
            } else if !cyclic && !dsu.same(u, v) {
                return false;
            }
        }
        true
    }
}

/// Searches for a certificate of `x`.
///
/// Depth-first over extension prefixes, trying edges of `x` before the
/// others; dead prefixes are memoized by their edge set. More than `cap`
/// distinct prefixes visited is an `OracleScaleExceeded` error.
pub fn k_certified(inst: &Instance, x: &EdgeSet, cap: usize) -> Result<Option<KCertificate>> {
    let rel = &inst.relation;
    let ranks = rel.tie_ranks(&TieBreak::Lexicographic);
    let mut candidates: Vec<usize> = (0..rel.len()).collect();
    candidates.sort_by_key(|&e| (!x.contains(e), ranks[e]));
    let mut search = CertificateSearch {
        inst,
        subject: x,
        candidates,
        pending: (0..rel.len()).map(|e| rel.predecessors(e).len()).collect(),
        placed: EdgeSet::empty(rel.len()),
        prefix: Vec::with_capacity(rel.len()),
        dead: HashSet::new(),
        visited: 0,
        cap,
    };
    Ok(search.run()?.then(|| KCertificate {
        subject: x.clone(),
        witness: LinearExtension(search.prefix),
    }))
}

struct CertificateSearch<'a> {
    inst: &'a Instance,
    subject: &'a EdgeSet,
    candidates: Vec<usize>,
    pending: Vec<usize>,
    placed: EdgeSet,
    prefix: Vec<usize>,
    dead: HashSet<EdgeSet>,
    visited: usize,
    cap: usize,
}

impl CertificateSearch<'_> {
    /// Structure of the subject edges placed so far: (union-find, contains a cycle).
    fn placed_subject(&self) -> (DisjointSets, bool) {
        let graph = self.inst.graph();
        let mut dsu = DisjointSets::new(graph.vertex_count());
        let mut cyclic = false;
        for &e in &self.prefix {
            if self.subject.contains(e) {
                let (u, v) = graph.edge(e).ends;
                cyclic |= !dsu.union(u, v);
            }
        }
        (dsu, cyclic)
    }

    fn run(&mut self) -> Result<bool> {
        if self.prefix.len() == self.pending.len() {
            return Ok(true);
        }
        if self.dead.contains(&self.placed) {
            return Ok(false);
        }
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::OracleScaleExceeded {
                what: "certificate search states",
                cap: self.cap,
            });
        }
        let (mut dsu, cyclic) = self.placed_subject();
        let rel = self.inst.relation();
        for i in 0..self.candidates.len() {
            let e = self.candidates[i];
            if self.placed.contains(e) || self.pending[e] != 0 {
                continue;
            }
            if !self.subject.contains(e) {
                let (u, v) = self.inst.graph().edge(e).ends;
                if !cyclic && !dsu.same(u, v) {
                    continue;
                }
            }
            self.placed.insert(e);
            self.prefix.push(e);
            for &f in rel.successors(e) {
                self.pending[f] -= 1;
            }
            if self.run()? {
                return Ok(true);
            }
            for &f in rel.successors(e) {
                self.pending[f] += 1;
            }
            self.prefix.pop();
            self.placed.remove(e);
        }
        self.dead.insert(self.placed.clone());
        Ok(false)
    }
}

/// Fundamental kind of `(x, y)` under the subset relation induced by certification.
///
/// `x == y` is reported as indifference (reflexivity).
pub fn k_relation(
    inst: &Instance,
    x: &EdgeSet,
    y: &EdgeSet,
    cap: usize,
) -> Result<FundamentalKind> {
    if x == y {
        return Ok(FundamentalKind::Indifference);
    }
    let cx = k_certified(inst, x, cap)?.is_some();
    let cy = k_certified(inst, y, cap)?.is_some();
    Ok(match (cx, cy) {
        (true, true) => FundamentalKind::Indifference,
        (true, false) => FundamentalKind::StrictPreference,
        (false, true) => FundamentalKind::StrictAversion,
        (false, false) => FundamentalKind::Incomparability,
    })
}

/// Sorts trees by their lexicographically sorted id lists.
pub fn canonical_order(graph: &UndirectedGraph, trees: &mut [EdgeSet]) {
    trees.sort_by_cached_key(|t| graph.sorted_ids(t));
}

/// Kruskal over every linear extension, deduplicated.
pub fn maximal_trees_by_extensions(inst: &Instance, cap: usize) -> Result<Vec<EdgeSet>> {
    let mut seen = HashSet::new();
    let mut trees = Vec::new();
    for ext in inst.relation.enumerate_linear_extensions(cap)? {
        if let Some(tree) = inst.graph.kruskal_by_order(ext.as_slice()) {
            if seen.insert(tree.clone()) {
                trees.push(tree);
            }
        }
    }
    canonical_order(&inst.graph, &mut trees);
    Ok(trees)
}

/// Spanning trees that admit a certificate.
pub fn maximal_trees_by_certification(inst: &Instance, caps: OracleCaps) -> Result<Vec<EdgeSet>> {
    let mut trees = Vec::new();
    for tree in inst.graph.enumerate_spanning_trees(caps.trees)? {
        if k_certified(inst, &tree, caps.extensions)?.is_some() {
            trees.push(tree);
        }
    }
    canonical_order(&inst.graph, &mut trees);
    Ok(trees)
}

/// The maximal spanning trees, computed by both exhaustive routes.
///
/// Fails with `OracleDisagreement` if the routes differ.
pub fn oracle_maximal_trees(inst: &Instance, caps: OracleCaps) -> Result<Vec<EdgeSet>> {
    let by_extensions = maximal_trees_by_extensions(inst, caps.extensions)?;
    let by_certification = maximal_trees_by_certification(inst, caps)?;
    if by_extensions != by_certification {
        return Err(Error::OracleDisagreement);
    }
    Ok(by_extensions)
}
