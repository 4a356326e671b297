//! The JSON instance document shared by the CLI and the HTTP service.
//!
//! ```json
//! {
//!   "vertices": ["x", "y", "z"],
//!   "edges": [{"id": "a", "u": "x", "v": "y"}, {"id": "b", "u": "y", "v": "z"}],
//!   "preferences": [{"left": "a", "right": "b", "kind": "strict"}],
//!   "criteria": {"names": ["cost"], "values": {"a": [1], "b": [2]}}
//! }
//! ```
//!
//! `"strict"` means `left ≻ right`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::graph::{EdgeId, UndirectedGraph, VertexId};
use crate::multiobjective::{pareto_edge_relation, CriteriaMatrix};
use crate::relation::{EdgeRelation, PairKind};
use crate::solver::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InstanceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default)]
    pub preferences: Vec<PreferenceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criteria: Option<CriteriaBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub id: String,
    pub u: String,
    pub v: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferenceEntry {
    pub left: String,
    pub right: String,
    pub kind: PairKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaBlock {
    pub names: Vec<String>,
    pub values: BTreeMap<String, Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl DocumentError {
    pub fn code(&self) -> &'static str {
        match self {
            DocumentError::Syntax { .. } => "malformedDocument",
            DocumentError::Invalid(e) => e.code(),
        }
    }
}

/// A document resolved into domain values, before the acyclicity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedDocument {
    pub name: Option<String>,
    pub graph: UndirectedGraph,
    pub relation: EdgeRelation,
    pub criteria: Option<CriteriaMatrix>,
}

impl ParsedDocument {
    /// Fails when the relation has a strict circuit.
    pub fn instance(&self) -> Result<Instance, Error> {
        Instance::new(self.graph.clone(), self.relation.clone())
    }

    /// The graph paired with the Pareto relation of the criteria block.
    pub fn pareto_instance(&self) -> Result<Instance, Error> {
        let criteria = self.criteria.as_ref().ok_or(Error::NoCriteria)?;
        Instance::new(self.graph.clone(), pareto_edge_relation(criteria))
    }
}

impl InstanceDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn resolve(&self) -> Result<ParsedDocument, Error> {
        let graph = UndirectedGraph::new(
            self.vertices.iter().map(|v| VertexId::from(v.as_str())),
            self.edges.iter().map(|e| {
                (
                    EdgeId::from(e.id.as_str()),
                    VertexId::from(e.u.as_str()),
                    VertexId::from(e.v.as_str()),
                )
            }),
        )?;
        let mut relation = EdgeRelation::new(graph.edge_ids().cloned())?;
        for p in &self.preferences {
            relation.add_pair(&p.left, &p.right, p.kind)?;
        }
        let criteria = self
            .criteria
            .as_ref()
            .map(|c| CriteriaMatrix::new(&graph, c.names.clone(), &c.values))
            .transpose()?;
        Ok(ParsedDocument {
            name: self.name.clone(),
            graph,
            relation,
            criteria,
        })
    }

    /// Parses and validates in one step, including P-acyclicity.
    pub fn parse(text: &str) -> Result<(Instance, Option<CriteriaMatrix>), DocumentError> {
        let parsed = Self::from_json(text)?.resolve()?;
        let instance = parsed.instance()?;
        Ok((instance, parsed.criteria))
    }

    /// Canonical document: graph order kept, preferences sorted by ids
    /// (strict pairs first).
    pub fn from_instance(inst: &Instance, criteria: Option<&CriteriaMatrix>) -> Self {
        let graph = inst.graph();
        let rel = inst.relation();
        let id = |e: usize| rel.id(e).0.clone();
        let mut strict: Vec<PreferenceEntry> = rel
            .strict_pairs()
            .map(|(l, r)| PreferenceEntry {
                left: id(l),
                right: id(r),
                kind: PairKind::Strict,
            })
            .collect();
        strict.sort_by(|a, b| (&a.left, &a.right).cmp(&(&b.left, &b.right)));
        let mut indifferent: Vec<PreferenceEntry> = rel
            .indifferent_pairs()
            .map(|(l, r)| {
                let (l, r) = (id(l), id(r));
                let (left, right) = if l <= r { (l, r) } else { (r, l) };
                PreferenceEntry {
                    left,
                    right,
                    kind: PairKind::Indifferent,
                }
            })
            .collect();
        indifferent.sort_by(|a, b| (&a.left, &a.right).cmp(&(&b.left, &b.right)));
        strict.extend(indifferent);
        InstanceDocument {
            name: None,
            vertices: graph.vertices().iter().map(|v| v.0.clone()).collect(),
            edges: graph
                .edges()
                .iter()
                .map(|e| EdgeEntry {
                    id: e.id.0.clone(),
                    u: graph.vertices()[e.ends.0].0.clone(),
                    v: graph.vertices()[e.ends.1].0.clone(),
                })
                .collect(),
            preferences: strict,
            criteria: criteria.map(|c| CriteriaBlock {
                names: c.names().to_vec(),
                values: c.to_map(),
            }),
        }
    }
}
