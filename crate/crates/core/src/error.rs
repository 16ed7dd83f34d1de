use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("ground set too large: {0} elements (at most {max} supported)", max = crate::ElementSet::CAPACITY)]
    TooLarge(usize),

    #[error("matroid axiom violated: {0}")]
    AxiomViolation(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("matroid has loops: {0:?}")]
    HasLoops(Vec<String>),

    #[error("matroid must be simple")]
    NotSimple,

    #[error("matroid must be connected")]
    NotConnected,

    #[error("{0:?} is not a basis")]
    NotABasis(Vec<String>),

    #[error("coarse structure unsupported: {0}")]
    CoarseUnsupported(String),

    #[error("not a chain of proper nonempty flats")]
    NotAChain,

    #[error("wrong total degree: expected {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },

    #[error("size cap exceeded: {size} entries > cap {cap}")]
    SizeCapExceeded { size: u128, cap: u128 },

    #[error("lattice map is not well defined on the quotient: {0}")]
    NotWellDefined(String),

    #[error("lattice map is not unimodular on the quotient (determinant {0})")]
    NotUnimodular(String),

    #[error("bijection is not a matroid isomorphism: rank differs on {0:?}")]
    NotAnIsomorphism(Vec<String>),

    #[error("map is not a fan isomorphism: {0:?}")]
    NotAFanIsomorphism(Vec<String>),

    #[error("cremona criterion fails: {0}")]
    CremonaCriterion(String),

    #[error("matroid carries no parallel-connection gluing data")]
    NoGluing,

    #[error("inconsistent computation: {0}")]
    Inconsistent(String),

    #[error("serialization: {0}")]
    Serialization(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
