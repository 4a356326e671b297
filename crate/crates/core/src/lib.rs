//! Maximal spanning trees under ordinal, possibly incomplete, edge
//! preferences.
//!
//! The crate covers the whole pipeline from an instance document to
//! decisions: graph primitives ([`graph`]), finite preference relations
//! ([`relation`]), the greedy solver and exhaustive oracles ([`solver`]),
//! max-consistency filtering ([`gpc`]), Pareto aggregation of
//! multi-criteria utilities ([`multiobjective`]) and the interactive
//! commit/exclude/undo loop ([`session`]).

pub mod document;
pub mod edge_set;
pub mod error;
pub mod fixtures;
pub mod gpc;
pub mod graph;
pub mod multiobjective;
pub mod random;
pub mod relation;
pub mod session;
pub mod solver;

pub use document::{DocumentError, InstanceDocument, ParsedDocument};
pub use edge_set::{DisjointSets, EdgeSet};
pub use error::{Error, Result};
pub use gpc::{gpc, ConsistencyResult};
pub use graph::{EdgeId, UndirectedGraph, VertexId};
pub use relation::{EdgeRelation, FundamentalKind, LinearExtension, TieBreak};
pub use solver::{Instance, OracleCaps};
