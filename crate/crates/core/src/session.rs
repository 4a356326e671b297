//! Interactive tree building: commit, exclude and undo single edges while
//! the set of still max-consistent edges is recomputed after every move.
//!
//! Two modes exist. `Exact` filters the maximal spanning trees of the
//! original instance (precomputed by the exhaustive oracle) against the
//! current choices. `Fast` runs the consistency filter on the instance left
//! after contracting committed edges and deleting excluded ones; it is a
//! relaxation of exact mode and can lead to a final tree that is not
//! maximal for the original instance.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::edge_set::EdgeSet;
use crate::error::Error;
use crate::gpc::{gpc, ConsistentIds};
use crate::graph::EdgeId;
use crate::relation::TieBreak;
use crate::solver::{oracle_maximal_trees, Instance, OracleCaps};

pub const FAST_MODE_WARNING: &str =
    "fast mode: consistency is recomputed on the reduced instance and a maximal final tree is not guaranteed";
pub const NO_EXTENSION_WARNING: &str = "no maximal spanning tree extends the current choices";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fast,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    InProgress,
    Complete,
    DeadEnd,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Choices {
    pub committed: BTreeSet<String>,
    pub excluded: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionState {
    pub session_id: String,
    pub instance_id: String,
    pub committed: BTreeSet<String>,
    pub excluded: BTreeSet<String>,
    pub consistent_now: BTreeSet<String>,
    pub mode: Mode,
    pub status: Status,
    pub warnings: Vec<String>,
    pub history: Vec<Choices>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionKind {
    Commit,
    Exclude,
    Undo,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Action {
    pub kind: ActionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<String>,
}

impl Action {
    pub fn commit(edge: &str) -> Self {
        Action {
            kind: ActionKind::Commit,
            edge: Some(edge.to_owned()),
        }
    }

    pub fn exclude(edge: &str) -> Self {
        Action {
            kind: ActionKind::Exclude,
            edge: Some(edge.to_owned()),
        }
    }

    pub fn undo() -> Self {
        Action {
            kind: ActionKind::Undo,
            edge: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("{0}")]
    Conflict(String),
    #[error("{0}")]
    BadAction(String),
    #[error("exact mode unavailable: {0}")]
    ExactUnavailable(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl SessionError {
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::UnknownEdge(_) => "unknownEdge",
            SessionError::Conflict(_) => "conflict",
            SessionError::BadAction(_) => "badAction",
            SessionError::ExactUnavailable(_) => "exactModeUnavailable",
            SessionError::Domain(e) => e.code(),
        }
    }
}

/// Limits under which an instance qualifies for exact mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactModeConfig {
    pub max_edges: usize,
    pub caps: OracleCaps,
}

impl Default for ExactModeConfig {
    fn default() -> Self {
        ExactModeConfig {
            max_edges: 12,
            caps: OracleCaps::default(),
        }
    }
}

/// Maximal spanning trees when the instance is small enough for the
/// oracle, `Err` with the reason otherwise.
pub fn exact_maximal_trees(
    inst: &Instance,
    config: &ExactModeConfig,
) -> Result<Vec<EdgeSet>, String> {
    let edges = inst.graph().edge_count();
    if edges > config.max_edges {
        return Err(format!(
            "{edges} edges exceed the limit of {}",
            config.max_edges
        ));
    }
    let extensions = inst
        .relation()
        .count_linear_extensions()
        .map_err(|e| e.to_string())?;
    if extensions > config.caps.extensions as u128 {
        return Err(format!(
            "{extensions} linear extensions exceed the limit of {}",
            config.caps.extensions
        ));
    }
    oracle_maximal_trees(inst, config.caps).map_err(|e| e.to_string())
}

/// Contracts `committed`, deletes `excluded` (and edges turned into loops)
/// and restricts the relation to the surviving edges.
pub fn reduced_instance(
    inst: &Instance,
    committed: &EdgeSet,
    excluded: &EdgeSet,
) -> Result<Instance, Error> {
    let graph = inst.graph().reduce(committed, excluded)?;
    let surviving: Vec<EdgeId> = graph.edge_ids().cloned().collect();
    let relation = inst.relation().restrict(&surviving)?;
    Instance::new(graph, relation)
}

/// Report on a stored instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub connected: bool,
    pub p_acyclic: bool,
    pub consistent_edges: ConsistentIds,
    /// Present only when the instance qualifies for exact mode.
    pub maximal_trees: Option<Vec<Vec<String>>>,
}

pub fn analyze(inst: &Instance, config: &ExactModeConfig) -> AnalysisReport {
    let graph = inst.graph();
    let consistent = gpc(inst, &TieBreak::Lexicographic);
    let maximal_trees = exact_maximal_trees(inst, config).ok().map(|trees| {
        trees
            .iter()
            .map(|t| graph.sorted_ids(t).into_iter().map(|id| id.0).collect())
            .collect()
    });
    AnalysisReport {
        connected: graph.is_connected(),
        p_acyclic: inst.relation().is_p_acyclic(),
        consistent_edges: ConsistentIds::of(&consistent, graph),
        maximal_trees,
    }
}

/// Evaluates actions against one instance. Pure: states go in and come out.
#[derive(Debug, Clone)]
pub struct SessionEngine {
    instance: Instance,
    mode: Mode,
    exact_trees: Vec<EdgeSet>,
}

impl SessionEngine {
    /// Without a requested mode, exact mode is used whenever the instance qualifies.
    pub fn new(
        instance: Instance,
        requested: Option<Mode>,
        config: &ExactModeConfig,
    ) -> Result<Self, SessionError> {
        let (mode, exact_trees) = match requested {
            Some(Mode::Fast) => (Mode::Fast, Vec::new()),
            Some(Mode::Exact) => (
                Mode::Exact,
                exact_maximal_trees(&instance, config).map_err(SessionError::ExactUnavailable)?,
            ),
            None => match exact_maximal_trees(&instance, config) {
                Ok(trees) => (Mode::Exact, trees),
                Err(_) => (Mode::Fast, Vec::new()),
            },
        };
        Ok(SessionEngine {
            instance,
            mode,
            exact_trees,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn start(&self, session_id: &str, instance_id: &str) -> SessionState {
        let empty = self.instance.graph().empty_set();
        self.evaluate(session_id, instance_id, &empty, &empty, Vec::new())
            .expect("the empty commitment is a forest")
    }

    pub fn apply(
        &self,
        state: &SessionState,
        action: &Action,
    ) -> Result<SessionState, SessionError> {
        let graph = self.instance.graph();
        let mut committed = graph.subset(&state.committed)?;
        let mut excluded = graph.subset(&state.excluded)?;
        let mut history = state.history.clone();
        match action.kind {
            ActionKind::Undo => {
                let previous = history
                    .pop()
                    .ok_or_else(|| SessionError::Conflict("nothing to undo".into()))?;
                committed = graph.subset(&previous.committed)?;
                excluded = graph.subset(&previous.excluded)?;
            }
            kind => {
                let id = action
                    .edge
                    .as_deref()
                    .ok_or_else(|| SessionError::BadAction(format!("{kind:?} needs an edge")))?;
                let e = graph
                    .edge_index(id)
                    .ok_or_else(|| SessionError::UnknownEdge(id.to_owned()))?;
                if state.status != Status::InProgress {
                    return Err(SessionError::Conflict(format!(
                        "session is {:?}; only undo is allowed",
                        state.status
                    )));
                }
                if committed.contains(e) {
                    return Err(SessionError::Conflict(format!(
                        "edge `{id}` is already committed"
                    )));
                }
                if excluded.contains(e) {
                    return Err(SessionError::Conflict(format!("edge `{id}` is excluded")));
                }
                if kind == ActionKind::Commit {
                    if !state.consistent_now.contains(id) {
                        return Err(SessionError::Conflict(format!(
                            "edge `{id}` is not max-consistent"
                        )));
                    }
                    committed.insert(e);
                } else {
                    excluded.insert(e);
                }
                history.push(Choices {
                    committed: state.committed.clone(),
                    excluded: state.excluded.clone(),
                });
            }
        }
        self.evaluate(
            &state.session_id,
            &state.instance_id,
            &committed,
            &excluded,
            history,
        )
    }

    fn evaluate(
        &self,
        session_id: &str,
        instance_id: &str,
        committed: &EdgeSet,
        excluded: &EdgeSet,
        history: Vec<Choices>,
    ) -> Result<SessionState, SessionError> {
        let graph = self.instance.graph();
        let reduced = reduced_instance(&self.instance, committed, excluded)?;
        let mut consistent = committed.clone();
        match self.mode {
            Mode::Exact => {
                for tree in &self.exact_trees {
                    if committed.is_subset(tree) && tree.is_disjoint(excluded) {
                        consistent.union_with(tree);
                    }
                }
            }
            Mode::Fast => {
                if let Some(ids) = gpc(&reduced, &TieBreak::Lexicographic).ids(reduced.graph()) {
                    consistent.union_with(&graph.subset(&ids)?);
                }
            }
        }
        let status = if graph.is_spanning_tree(committed) {
            Status::Complete
        } else if !reduced.graph().is_connected() {
            Status::DeadEnd
        } else {
            Status::InProgress
        };
        let mut warnings = Vec::new();
        if self.mode == Mode::Fast {
            warnings.push(FAST_MODE_WARNING.to_owned());
        }
        if status == Status::InProgress && consistent == *committed {
            warnings.push(NO_EXTENSION_WARNING.to_owned());
        }
        let names = |set: &EdgeSet| graph.sorted_ids(set).into_iter().map(|id| id.0).collect();
        Ok(SessionState {
            session_id: session_id.to_owned(),
            instance_id: instance_id.to_owned(),
            committed: names(committed),
            excluded: names(excluded),
            consistent_now: names(&consistent),
            mode: self.mode,
            status,
            warnings,
            history,
        })
    }
}
