//! Global preferential consistency: the exact set of edges that belong to
//! at least one maximal spanning tree.
//!
//! Edges are numbered maximal-first. For each edge `e`, `C(e)` collects every
//! edge with a path of strict preferences towards `e`, built from the already
//! processed direct predecessors. `e` is max-consistent iff adding it to
//! `(V, C(e))` merges two components.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Serialize, Serializer};

use crate::edge_set::{DisjointSets, EdgeSet};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::relation::{EdgeRelation, TieBreak};
use crate::solver::Instance;

/// Ancestors of `edge` under the strict part of the relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictClosure {
    pub edge: usize,
    pub ancestors: EdgeSet,
}

/// Backward traversal over strict pairs from `e`.
pub fn strict_closure(rel: &EdgeRelation, e: usize) -> Result<StrictClosure> {
    if e >= rel.len() {
        return Err(Error::UnknownEdge(format!("#{e}")));
    }
    let mut ancestors = EdgeSet::empty(rel.len());
    let mut stack = vec![e];
    while let Some(f) = stack.pop() {
        for &p in rel.predecessors(f) {
            if !ancestors.contains(p) {
                ancestors.insert(p);
                stack.push(p);
            }
        }
    }
    Ok(StrictClosure { edge: e, ancestors })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsistencyResult {
    Consistent(EdgeSet),
    /// The graph has no spanning tree.
    No,
}

impl ConsistencyResult {
    pub fn edges(&self) -> Option<&EdgeSet> {
        match self {
            ConsistencyResult::Consistent(set) => Some(set),
            ConsistencyResult::No => None,
        }
    }

    /// Sorted edge ids, or `None` for 'no'.
    pub fn ids(&self, graph: &UndirectedGraph) -> Option<Vec<String>> {
        self.edges()
            .map(|set| graph.sorted_ids(set).into_iter().map(|id| id.0).collect())
    }
}

/// Wire form: a sorted id list, or the string `"no"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsistentIds {
    Edges(Vec<String>),
    No,
}

impl ConsistentIds {
    pub fn of(result: &ConsistencyResult, graph: &UndirectedGraph) -> Self {
        match result.ids(graph) {
            Some(ids) => ConsistentIds::Edges(ids),
            None => ConsistentIds::No,
        }
    }
}

impl Serialize for ConsistentIds {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ConsistentIds::Edges(ids) => ids.serialize(s),
            ConsistentIds::No => s.serialize_str("no"),
        }
    }
}

/// Max-consistent edges of the instance; independent of `choose`.
pub fn gpc(inst: &Instance, choose: &TieBreak) -> ConsistencyResult {
    let graph = inst.graph();
    let rel = inst.relation();
    if !graph.is_connected() {
        return ConsistencyResult::No;
    }
    let n = graph.edge_count();
    // Closures below this size are kept as lists so that sparse preference
    // graphs do not pay n/64 words per edge.
    let dense_from = (n / 32).max(64);
    let order = MaximalFirst::new(rel, choose);
    let mut unprocessed_successors: Vec<usize> = (0..n).map(|e| rel.successors(e).len()).collect();
    let mut closures: Vec<Closure> = vec![Closure::Sparse(Vec::new()); n];
    let mut marks = Marks::new(n);
    let mut search = PairSearch::new(graph.vertex_count());
    let mut answer = EdgeSet::empty(n);
    for e in order {
        let preds = rel.predecessors(e);
        let bound: usize = preds.iter().map(|&p| closures[p].len() + 1).sum();
        let closure = if bound < dense_from {
            let stamp = marks.next();
            let mut members = Vec::with_capacity(bound);
            let mut mark = |f: usize| {
                if marks.seen[f] != stamp {
                    marks.seen[f] = stamp;
                    members.push(f);
                }
            };
            for &p in preds {
                match &closures[p] {
                    Closure::Sparse(list) => list.iter().for_each(|&f| mark(f)),
                    Closure::Dense(set, _) => set.iter().for_each(&mut mark),
                }
                mark(p);
            }
            Closure::Sparse(members)
        } else {
            let mut set = EdgeSet::empty(n);
            for &p in preds {
                match &closures[p] {
                    Closure::Sparse(list) => list.iter().for_each(|&f| set.insert(f)),
                    Closure::Dense(other, _) => set.union_with(other),
                }
                set.insert(p);
            }
            let len = set.len();
            Closure::Dense(set, len)
        };
        for &p in preds {
            unprocessed_successors[p] -= 1;
            if unprocessed_successors[p] == 0 {
                // no later edge reads this closure again
                closures[p] = Closure::Sparse(Vec::new());
            }
        }
        let (u, v) = graph.edge(e).ends;
        let separated = match &closure {
            Closure::Sparse(_) => {
                // marks still hold the members of this closure
                let stamp = marks.stamp;
                !search.connected(graph, |f| marks.seen[f] == stamp, u, v)
            }
            Closure::Dense(set, _) => !search.connected(graph, |f| set.contains(f), u, v),
        };
        if separated {
            answer.insert(e);
        }
        if unprocessed_successors[e] > 0 {
            closures[e] = closure;
        }
    }
    ConsistencyResult::Consistent(answer)
}

#[derive(Debug, Clone)]
enum Closure {
    Sparse(Vec<usize>),
    /// Bitset with its cardinality.
    Dense(EdgeSet, usize),
}

impl Closure {
    fn len(&self) -> usize {
        match self {
            Closure::Sparse(list) => list.len(),
            Closure::Dense(_, len) => *len,
        }
    }
}

/// Generation-stamped membership marks over the edges.
struct Marks {
    seen: Vec<u32>,
    stamp: u32,
}

impl Marks {
    fn new(n: usize) -> Self {
        Marks {
            seen: vec![0; n],
            stamp: 0,
        }
    }

    fn next(&mut self) -> u32 {
        self.stamp += 1;
        self.stamp
    }
}

/// One loop iteration of the literal transcription.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpcStep {
    pub edge: usize,
    /// Edges still unnumbered after removing `edge`.
    pub remaining: EdgeSet,
    /// Answer before this iteration.
    pub answer_before: EdgeSet,
    pub closure: EdgeSet,
    pub components_without: usize,
    pub components_with: usize,
    /// Endpoints in different sets of a union-find built on the closure.
    pub endpoints_separated: bool,
    pub accepted: bool,
}

/// Literal transcription that recounts components from scratch at every
/// step and records each iteration; `None` for a disconnected graph.
pub fn gpc_trace(inst: &Instance, choose: &TieBreak) -> Option<Vec<GpcStep>> {
    let graph = inst.graph();
    let rel = inst.relation();
    let n = graph.edge_count();
    let count = |set: &EdgeSet| {
        graph
            .connected_components(set)
            .expect("closure drawn from the graph")
            .count
    };
    if count(&graph.full_set()) > 1 {
        return None;
    }
    let mut remaining = EdgeSet::full(n);
    let mut answer = EdgeSet::empty(n);
    let mut closures = vec![EdgeSet::empty(n); n];
    let mut steps = Vec::with_capacity(n);
    let order = MaximalFirst::new(rel, choose);
    for e in order {
        remaining.remove(e);
        let mut closure = EdgeSet::empty(n);
        for &p in rel.predecessors(e) {
            closure.union_with(&closures[p]);
            closure.insert(p);
        }
        let without = count(&closure);
        let mut with_e = closure.clone();
        with_e.insert(e);
        let with = count(&with_e);
        let mut dsu = DisjointSets::new(graph.vertex_count());
        for f in closure.iter() {
            let (a, b) = graph.edge(f).ends;
            dsu.union(a, b);
        }
        let (u, v) = graph.edge(e).ends;
        let step = GpcStep {
            edge: e,
            remaining: remaining.clone(),
            answer_before: answer.clone(),
            closure: closure.clone(),
            components_without: without,
            components_with: with,
            endpoints_separated: !dsu.same(u, v),
            accepted: with < without,
        };
        if step.accepted {
            answer.insert(e);
        }
        closures[e] = closure;
        steps.push(step);
    }
    Some(steps)
}

/// Maximal elements of the unnumbered edges, least tie-break rank first.
struct MaximalFirst<'a> {
    rel: &'a EdgeRelation,
    ranks: Vec<usize>,
    pending: Vec<usize>,
    heap: BinaryHeap<Reverse<(usize, usize)>>,
}

impl<'a> MaximalFirst<'a> {
    fn new(rel: &'a EdgeRelation, choose: &TieBreak) -> Self {
        let ranks = rel.tie_ranks(choose);
        let pending: Vec<usize> = (0..rel.len()).map(|e| rel.predecessors(e).len()).collect();
        let heap = (0..rel.len())
            .filter(|&e| pending[e] == 0)
            .map(|e| Reverse((ranks[e], e)))
            .collect();
        MaximalFirst {
            rel,
            ranks,
            pending,
            heap,
        }
    }
}

impl Iterator for MaximalFirst<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let Reverse((_, e)) = self.heap.pop()?;
        for &f in self.rel.successors(e) {
            self.pending[f] -= 1;
            if self.pending[f] == 0 {
                self.heap.push(Reverse((self.ranks[f], f)));
            }
        }
        Some(e)
    }
}

/// Bidirectional breadth-first search restricted to an edge subset.
///
/// Always grows the smaller frontier, so a query stops after exhausting the
/// smaller of the two components when the endpoints are separated.
struct PairSearch {
    seen_from_source: Vec<u32>,
    seen_from_target: Vec<u32>,
    generation: u32,
}

impl PairSearch {
    fn new(vertices: usize) -> Self {
        PairSearch {
            seen_from_source: vec![0; vertices],
            seen_from_target: vec![0; vertices],
            generation: 0,
        }
    }

    fn connected(
        &mut self,
        graph: &UndirectedGraph,
        allowed: impl Fn(usize) -> bool,
        source: usize,
        target: usize,
    ) -> bool {
        self.generation += 1;
        let g = self.generation;
        self.seen_from_source[source] = g;
        self.seen_from_target[target] = g;
        let mut frontier_s = vec![source];
        let mut frontier_t = vec![target];
        let mut next = Vec::new();
        while !frontier_s.is_empty() && !frontier_t.is_empty() {
            let from_source = frontier_s.len() <= frontier_t.len();
            let (frontier, mine, theirs) = if from_source {
                (
                    &mut frontier_s,
                    &mut self.seen_from_source,
                    &self.seen_from_target,
                )
            } else {
                (
                    &mut frontier_t,
                    &mut self.seen_from_target,
                    &self.seen_from_source,
                )
            };
            next.clear();
            for &x in frontier.iter() {
                for &(e, y) in graph.incident(x) {
                    if !allowed(e) {
                        continue;
                    }
                    if theirs[y] == g {
                        return true;
                    }
                    if mine[y] != g {
                        mine[y] = g;
                        next.push(y);
                    }
                }
            }
            std::mem::swap(frontier, &mut next);
        }
        false
    }
}
