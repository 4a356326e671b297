use thiserror::Error;

/// Errors raised while building or querying instances.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("edge `{0}` is a self-loop")]
    SelfLoop(String),
    #[error("preference pair ({left}, {right}) {reason}")]
    ContradictoryPreference {
        left: String,
        right: String,
        reason: &'static str,
    },
    #[error("strict preferences contain a circuit through `{0}`")]
    NotPAcyclic(String),
    #[error("relation ground set does not match the graph edge set")]
    GroundMismatch,
    #[error("committed edges contain a cycle through `{0}`")]
    CyclicContraction(String),
    #[error("edge `{0}` is both contracted and deleted")]
    ContractDeleteOverlap(String),
    #[error("oracle scale exceeded: more than {cap} {what}")]
    OracleScaleExceeded { what: &'static str, cap: usize },
    #[error("oracle routes disagree on the maximal spanning trees")]
    OracleDisagreement,
    #[error("edge `{edge}` has {found} criteria values, expected {expected}")]
    CriteriaArity {
        edge: String,
        expected: usize,
        found: usize,
    },
    #[error("at least one criterion is required")]
    NoCriteria,
    #[error("criteria missing for edge `{0}`")]
    MissingCriteria(String),
    #[error("vector lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

impl Error {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyGraph => "emptyGraph",
            Error::DuplicateVertex(_) => "duplicateVertex",
            Error::DuplicateEdge(_) => "duplicateEdge",
            Error::UnknownVertex(_) => "danglingVertex",
            Error::UnknownEdge(_) => "danglingEdge",
            Error::SelfLoop(_) => "selfLoop",
            Error::ContradictoryPreference { .. } => "contradictoryPreference",
            Error::NotPAcyclic(_) => "strictCycle",
            Error::GroundMismatch => "groundMismatch",
            Error::CyclicContraction(_) => "cyclicCommitment",
            Error::ContractDeleteOverlap(_) => "contractDeleteOverlap",
            Error::OracleScaleExceeded { .. } => "oracleScaleExceeded",
            Error::OracleDisagreement => "oracleDisagreement",
            Error::CriteriaArity { .. } => "criteriaArity",
            Error::NoCriteria => "noCriteria",
            Error::MissingCriteria(_) => "missingCriteria",
            Error::LengthMismatch(..) => "lengthMismatch",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
