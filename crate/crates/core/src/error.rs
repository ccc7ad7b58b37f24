use thiserror::Error;

use crate::poly::Var;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot substitute {var} by a polynomial that contains {var}")]
    CyclicSubstitution { var: Var },

    #[error("exponent overflow while multiplying monomials")]
    DegreeOverflow,

    #[error("module mismatch: {0}")]
    ModuleMismatch(String),

    #[error("arity {requested} exceeds the configured maximum {max}")]
    ArityOverflow { requested: usize, max: usize },

    #[error("not a representation: {0}")]
    InvalidRepresentation(String),

    #[error("2-cochain is not a cocycle: {0}")]
    NotACocycle(String),

    #[error("conformal dual pairing does not reproduce the action: {0}")]
    DualizationFailure(String),

    #[error("internal inconsistency between independent computations: {0}")]
    InternalInconsistency(String),

    #[error("structure is not quasi-twilled: {0}")]
    NotQuasiTwilled(String),

    #[error("map is not a Maurer-Cartan element: {0}")]
    NotMaurerCartan(String),

    #[error("map is not a (twisted) relative Rota-Baxter operator: {0}")]
    NotRotaBaxter(String),

    #[error("map is not a Nijenhuis operator: {0}")]
    NotNijenhuis(String),

    #[error("map is not a 1-cocycle (derivation): {0}")]
    NotCocycle(String),

    #[error("d^{bound} is nonzero on generator {generator}")]
    NotNilpotentWithinBound { bound: usize, generator: String },

    #[error("tensor is not skew-symmetric")]
    NotSkew,

    #[error("not an NS-Lie conformal algebra: {0}")]
    NotNSLie(String),

    #[error("not a conformal NS-algebra: {0}")]
    NotConformalNS(String),

    #[error("element is not a Nijenhuis element: {0}")]
    NotNijenhuisElement(String),

    #[error("lift input is not sesquilinear/skew in blocks: {0}")]
    NotSkewInBlocks(String),

    #[error("power {requested} exceeds the configured bound {max}")]
    PowerOutOfRange { requested: u32, max: u32 },

    #[error("invalid cochain: {0}")]
    InvalidCochain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
