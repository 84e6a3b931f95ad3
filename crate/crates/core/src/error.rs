use thiserror::Error;

use crate::exact::ExactResult;
use crate::model::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("label {0:?} appears twice in the alphabet")]
    DuplicateLabel(char),
    #[error("patterns must be non-empty")]
    EmptyPattern,
    #[error("arrangement is not a permutation of the text")]
    ArrangementMismatch,
    #[error("invalid instance: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidInstance(Vec<crate::model::Violation>),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search budget exhausted after {} nodes", .0.nodes_expanded)]
    BudgetExhausted(Box<ExactResult>),
    #[error("{what} of size {n} exceeds the limit {max}")]
    SizeLimit { what: &'static str, n: usize, max: usize },
    #[error("vertex set is not a clique")]
    NotAClique,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("graph error: {0}")]
    Graph(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn violations(&self) -> Option<&[Violation]> {
        match self {
            Error::InvalidInstance(v) => Some(v),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
