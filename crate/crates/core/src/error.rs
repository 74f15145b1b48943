use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not a unit: {0}")]
    NonUnit(String),
    #[error("ring mismatch: {left} vs {right}")]
    SpecMismatch { left: String, right: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("value {value} is not representable in {ring}")]
    NotRepresentable { value: String, ring: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix has an entry outside the nilpotent ideal")]
    NotNilpotent,
    #[error("form is degenerate: {0}")]
    DegenerateForm(String),
    #[error("form is not {0}-symmetric")]
    NotSymmetric(i8),
    #[error("skew-symmetric nondegenerate form must have even rank, got {0}")]
    OddRank(usize),
    #[error("operation not supported over {ring}: {reason}")]
    Unsupported { ring: String, reason: String },
    #[error("isotropy search exhausted the height bound without a certificate")]
    OracleInconclusive,
    #[error("assignment of {0} is not a unit of the target ring")]
    NonUnitAssignment(String),
    #[error("generated set is not closed: {0}")]
    NotClosed(String),
    #[error("ill-formed sequence or chain: {0}")]
    IllFormed(String),
    #[error("no catalogued group for {0}")]
    NotCatalogued(String),
    #[error("matrix is not a lift of the given reduction")]
    NotALift,
    #[error("matrix is not unitary modulo the ideal")]
    NotUnitaryMod,
    #[error("involutions are not congruent modulo the ideal")]
    NotCongruent,
    #[error("not a self-adjoint involution: {0}")]
    NotInvolution(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonUnit(_) => "NonUnit",
            Error::SpecMismatch { .. } => "SpecMismatch",
            Error::InvalidRing(_) => "InvalidRing",
            Error::NotRepresentable { .. } => "NotRepresentable",
            Error::Dimension(_) => "Dimension",
            Error::NotNilpotent => "NotNilpotent",
            Error::DegenerateForm(_) => "DegenerateForm",
            Error::NotSymmetric(_) => "NotSymmetric",
            Error::OddRank(_) => "OddRank",
            Error::Unsupported { .. } => "Unsupported",
            Error::OracleInconclusive => "OracleInconclusive",
            Error::NonUnitAssignment(_) => "NonUnitAssignment",
            Error::NotClosed(_) => "NotClosed",
            Error::IllFormed(_) => "IllFormed",
            Error::NotCatalogued(_) => "NotCatalogued",
            Error::NotALift => "NotALift",
            Error::NotUnitaryMod => "NotUnitaryMod",
            Error::NotCongruent => "NotCongruent",
            Error::NotInvolution(_) => "NotInvolution",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
