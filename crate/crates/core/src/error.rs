use thiserror::Error;

use crate::axioms::AxiomReport;
use crate::elem::Elem;

/// Errors raised by structure evaluation, enumeration and constructions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("element index {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: Elem, size: usize },

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("carrier of size {size} exceeds the enumeration bound {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error("the structure has no designated scalar identity")]
    MissingIdentity,

    #[error("structure is not canonical: {0}")]
    NotCanonical(String),

    #[error("arities differ: ({m1},{n1}) vs ({m2},{n2})")]
    ArityPairMismatch { m1: usize, n1: usize, m2: usize, n2: usize },

    #[error("cosets of {x} and {y} overlap without coinciding")]
    NotAPartition { x: Elem, y: Elem },

    #[error("induced operation is not well defined: {0}")]
    WellDefinedness(String),

    #[error("invalid builder parameters: {0}")]
    InvalidParameters(String),

    #[error("built structure fails the Krasner axioms")]
    AxiomFailure(Box<AxiomReport>),

    #[error(transparent)]
    Format(#[from] crate::corpus::FormatError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
