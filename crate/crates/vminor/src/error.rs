use crate::graph::VertexId;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop at {0} is not allowed in a simple graph")]
    SelfLoop(VertexId),
    #[error("{0} and {1} are not adjacent")]
    NotAnEdge(VertexId, VertexId),
    #[error("invalid partner {partner} for X measurement of {v}")]
    InvalidPartner { v: VertexId, partner: VertexId },
    #[error("move {index} is invalid: {reason}")]
    InvalidMove { index: usize, reason: String },
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("size cap exceeded: {size} > {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("malformed double occurrence word: {0}")]
    MalformedWord(String),
    #[error("letter {0} does not occur in the word")]
    UnknownLetter(VertexId),
    #[error("graph is not 4-regular")]
    NotFourRegular,
    #[error("graph is not Eulerian")]
    NotEulerian,
    #[error("invalid tour: {0}")]
    InvalidTour(String),
    #[error("graph is not cubic")]
    NotCubic,
    #[error("not a Hamiltonian cycle: {0}")]
    NotHamiltonianCycle(String),
    #[error("tour is not a SOET for the given vertices")]
    NotSoet,
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error("{a} and {b} are in different components")]
    DifferentComponents { a: VertexId, b: VertexId },
    #[error("invalid outcome request: {0}")]
    InvalidOutcome(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
