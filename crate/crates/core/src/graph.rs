//! Undirected multigraphs with string-identified vertices and edges.
//!
//! Algorithms address vertices and edges by dense indices (`0..m`, `0..n`);
//! the string identifiers are kept for input and output only.

use std::borrow::Borrow;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::edge_set::{DisjointSets, EdgeSet};
use crate::error::{Error, Result};

macro_rules! string_id {
    ($name:ident) => {
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub String);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(s)
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", self.0)
            }
        }
    };
}

string_id!(VertexId);
string_id!(EdgeId);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    /// Vertex indices of the two (distinct) endpoints.
    pub ends: (usize, usize),
}

/// Component count and per-vertex component label of a partial graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentStructure {
    pub count: usize,
    /// `labels[v]` is the component index of vertex `v`, numbered by first appearance.
    pub labels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    vertex_index: HashMap<VertexId, usize>,
    edge_index: HashMap<EdgeId, usize>,
    /// Incidence lists packed per vertex: `incidence[offsets[v]..offsets[v + 1]]`.
    incidence: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

impl UndirectedGraph {
    /// Builds a graph; rejects duplicate ids, dangling endpoints and self-loops.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    ) -> Result<Self> {
        let vertices: Vec<VertexId> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.0.clone()));
            }
        }
        let mut built = Vec::new();
        let mut edge_index = HashMap::new();
        for (id, u, v) in edges {
            let ui = *vertex_index
                .get(&u)
                .ok_or_else(|| Error::UnknownVertex(u.0.clone()))?;
            let vi = *vertex_index
                .get(&v)
                .ok_or_else(|| Error::UnknownVertex(v.0.clone()))?;
            if ui == vi {
                return Err(Error::SelfLoop(id.0));
            }
            let e = built.len();
            if edge_index.insert(id.clone(), e).is_some() {
                return Err(Error::DuplicateEdge(id.0));
            }
            built.push(Edge { id, ends: (ui, vi) });
        }
        let mut offsets = vec![0; vertices.len() + 1];
        for e in &built {
            offsets[e.ends.0 + 1] += 1;
            offsets[e.ends.1 + 1] += 1;
        }
        for v in 0..vertices.len() {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut incidence = vec![(0, 0); 2 * built.len()];
        for (e, edge) in built.iter().enumerate() {
            let (u, v) = edge.ends;
            incidence[fill[u]] = (e, v);
            fill[u] += 1;
            incidence[fill[v]] = (e, u);
            fill[v] += 1;
        }
        Ok(UndirectedGraph {
            vertices,
            edges: built,
            vertex_index,
            edge_index,
            incidence,
            offsets,
        })
    }

    /// Shorthand for literal graphs: `from_ids(&["x", "y"], &[("e", "x", "y")])`.
    pub fn from_ids(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        Self::new(
            vertices.iter().map(|&v| VertexId::from(v)),
            edges
                .iter()
                .map(|&(e, u, v)| (EdgeId::from(e), VertexId::from(u), VertexId::from(v))),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_id(&self, e: usize) -> &EdgeId {
        &self.edges[e].id
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &EdgeId> + '_ {
        self.edges.iter().map(|e| &e.id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    /// Incident `(edge, other endpoint)` pairs of vertex `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incidence[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn empty_set(&self) -> EdgeSet {
        EdgeSet::empty(self.edge_count())
    }

    pub fn full_set(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    /// Resolves edge ids into a subset.
    pub fn subset<S: AsRef<str>>(&self, ids: impl IntoIterator<Item = S>) -> Result<EdgeSet> {
        let mut set = self.empty_set();
        for id in ids {
            let id = id.as_ref();
            set.insert(
                self.edge_index(id)
                    .ok_or_else(|| Error::UnknownEdge(id.to_owned()))?,
            );
        }
        Ok(set)
    }

    /// Edge ids of a subset in lexicographic order.
    pub fn sorted_ids(&self, set: &EdgeSet) -> Vec<EdgeId> {
        let mut ids: Vec<EdgeId> = set.iter().map(|e| self.edges[e].id.clone()).collect();
        ids.sort();
        ids
    }

    fn check_subset(&self, set: &EdgeSet) -> Result<()> {
        match set.iter().find(|&e| e >= self.edge_count()) {
            Some(e) => Err(Error::UnknownEdge(format!("#{e}"))),
            None => Ok(()),
        }
    }

    pub fn connected_components(&self, subset: &EdgeSet) -> Result<ComponentStructure> {
        self.check_subset(subset)?;
        let mut dsu = DisjointSets::new(self.vertex_count());
        for e in subset.iter() {
            let (u, v) = self.edges[e].ends;
            dsu.union(u, v);
        }
        let mut root_label = vec![usize::MAX; self.vertex_count()];
        let mut labels = Vec::with_capacity(self.vertex_count());
        let mut count = 0;
        for v in 0..self.vertex_count() {
            let r = dsu.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = count;
                count += 1;
            }
            labels.push(root_label[r]);
        }
        Ok(ComponentStructure { count, labels })
    }

    pub fn is_connected(&self) -> bool {
        let mut dsu = DisjointSets::new(self.vertex_count());
        for edge in &self.edges {
            dsu.union(edge.ends.0, edge.ends.1);
        }
        dsu.count() == 1
    }

    /// True when `set` has exactly `|V| - 1` edges and connects every vertex.
    pub fn is_spanning_tree(&self, set: &EdgeSet) -> bool {
        set.len() + 1 == self.vertex_count()
            && self
                .connected_components(set)
                .map(|c| c.count == 1)
                .unwrap_or(false)
    }

    pub fn is_forest(&self, set: &EdgeSet) -> bool {
        let mut dsu = DisjointSets::new(self.vertex_count());
        set.iter().all(|e| {
            let (u, v) = self.edges[e].ends;
            dsu.union(u, v)
        })
    }

    /// All spanning trees, in include-before-exclude order over edge indices.
    ///
    /// Fails with `OracleScaleExceeded` as soon as more than `cap` trees exist.
    pub fn enumerate_spanning_trees(&self, cap: usize) -> Result<Vec<EdgeSet>> {
        let mut trees = Vec::new();
        let mut chosen = Vec::with_capacity(self.vertex_count());
        self.branch_trees(0, &mut chosen, &mut trees, cap)?;
        Ok(trees)
    }

    fn branch_trees(
        &self,
        next: usize,
        chosen: &mut Vec<usize>,
        trees: &mut Vec<EdgeSet>,
        cap: usize,
    ) -> Result<()> {
        if chosen.len() + 1 == self.vertex_count() {
            if trees.len() == cap {
                return Err(Error::OracleScaleExceeded {
                    what: "spanning trees",
                    cap,
                });
            }
            trees.push(EdgeSet::from_indices(
                self.edge_count(),
                chosen.iter().copied(),
            ));
            return Ok(());
        }
        let needed = self.vertex_count() - 1 - chosen.len();
        if next == self.edge_count() || self.edge_count() - next < needed {
            return Ok(());
        }
        let mut dsu = DisjointSets::new(self.vertex_count());
        for &e in chosen.iter() {
            let (u, v) = self.edges[e].ends;
            dsu.union(u, v);
        }
        let (u, v) = self.edges[next].ends;
        if !dsu.same(u, v) {
            chosen.push(next);
            self.branch_trees(next + 1, chosen, trees, cap)?;
            chosen.pop();
        }
        // skipping `next` only pays off if the later edges can still connect everything
        for edge in &self.edges[next + 1..] {
            dsu.union(edge.ends.0, edge.ends.1);
        }
        if dsu.count() == 1 {
            self.branch_trees(next + 1, chosen, trees, cap)?;
        }
        Ok(())
    }

    /// Greedy tree construction under a total edge order: keeps every edge
    /// joining two components of the kept set. `None` when the graph is disconnected.
    pub fn kruskal_by_order(&self, order: &[usize]) -> Option<EdgeSet> {
        debug_assert_eq!(order.len(), self.edge_count());
        let mut dsu = DisjointSets::new(self.vertex_count());
        let mut tree = self.empty_set();
        for &e in order {
            let (u, v) = self.edges[e].ends;
            if dsu.union(u, v) {
                tree.insert(e);
            }
        }
        (dsu.count() == 1).then_some(tree)
    }

    /// Deletes `delete`, contracts `contract`, and drops edges that become loops.
    ///
    /// A merged vertex takes the lexicographically least id of its class.
    pub fn reduce(&self, contract: &EdgeSet, delete: &EdgeSet) -> Result<UndirectedGraph> {
        self.check_subset(contract)?;
        self.check_subset(delete)?;
        if let Some(e) = contract.iter().find(|&e| delete.contains(e)) {
            return Err(Error::ContractDeleteOverlap(self.edges[e].id.0.clone()));
        }
        let mut dsu = DisjointSets::new(self.vertex_count());
        for e in contract.iter() {
            let (u, v) = self.edges[e].ends;
            if !dsu.union(u, v) {
                return Err(Error::CyclicContraction(self.edges[e].id.0.clone()));
            }
        }
        let mut representative: HashMap<usize, usize> = HashMap::new();
        for v in 0..self.vertex_count() {
            let root = dsu.find(v);
            let best = representative.entry(root).or_insert(v);
            if self.vertices[v] < self.vertices[*best] {
                *best = v;
            }
        }
        let mut vertices = Vec::new();
        let mut seen = vec![false; self.vertex_count()];
        for v in 0..self.vertex_count() {
            let root = dsu.find(v);
            if !seen[root] {
                seen[root] = true;
                vertices.push(self.vertices[representative[&root]].clone());
            }
        }
        let mut edges = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if contract.contains(e) || delete.contains(e) {
                continue;
            }
            let (ru, rv) = (dsu.find(edge.ends.0), dsu.find(edge.ends.1));
            if ru != rv {
                edges.push((
                    edge.id.clone(),
                    self.vertices[representative[&ru]].clone(),
                    self.vertices[representative[&rv]].clone(),
                ));
            }
        }
        UndirectedGraph::new(vertices, edges)
    }
}
