use thiserror::Error;

/// Coarse classification used by the command-line front end to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Input is well-formed but outside the mathematical domain of the operation.
    Domain,
    /// Input is malformed or references things that do not exist.
    Structural,
    /// A search or invariant that should never fail did.
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0}")]
    Domain(String),
    #[error("no vertex `{0}`")]
    UnknownVertex(String),
    #[error("no edge between `{0}` and `{1}`")]
    UnknownEdge(String, String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop on `{0}` is not allowed in an SNC dual graph")]
    SelfLoop(String),
    #[error("vertex `{id}` has weight {weight}, only (-1)-vertices can be contracted")]
    NotContractibleVertex { id: String, weight: i64 },
    #[error("vertex `{id}` has degree {degree}, branch points cannot be contracted")]
    BranchPoint { id: String, degree: usize },
    #[error("contracting `{0}` would create a self-loop")]
    WouldCreateSelfLoop(String),
    #[error("graph is not contractible")]
    NotContractible,
    #[error("not a resolution chain: {0}")]
    NotHjChain(String),
    #[error("outside the branch-point family: {0}")]
    OutsideBranchFamily(String),
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("not regular on {0}: denominator vanishes identically there")]
    Regularity(String),
    #[error("evaluation hit the singular locus at stage {stage}: {reason}")]
    SingularLocus { stage: usize, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal defect: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain(_)
            | Error::NotContractibleVertex { .. }
            | Error::BranchPoint { .. }
            | Error::WouldCreateSelfLoop(_)
            | Error::NotContractible
            | Error::NotHjChain(_)
            | Error::OutsideBranchFamily(_)
            | Error::DivisionByZero
            | Error::Regularity(_)
            | Error::SingularLocus { .. } => ErrorKind::Domain,
            Error::UnknownVertex(_)
            | Error::UnknownEdge(..)
            | Error::DuplicateVertex(_)
            | Error::SelfLoop(_)
            | Error::Parse(_) => ErrorKind::Structural,
            Error::Internal(_) => ErrorKind::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
