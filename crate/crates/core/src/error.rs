use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("grounding scales differ ({0} vs {1})")]
    ScaleMismatch(u64, u64),
    #[error("discrepancy {0} is not > -1; singularity is not log-terminal")]
    NotLogTerminal(String),
    #[error("non-removable pole at q = 1")]
    PoleAtOne,
    #[error("pole at q = {0}")]
    PoleAtPoint(String),
    #[error("order at infinity of the zero function is +infinity")]
    ZeroInput,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid resolution datum: {0}")]
    InvalidDatum(String),
    #[error("inconsistent strata: {0}")]
    InconsistentStrata(String),
    #[error("open and closed stratum assemblies disagree")]
    FormMismatch,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("missing stratum {0}")]
    MissingStratum(String),
    #[error("invalid catalog: {0}")]
    Catalog(String),
    #[error("not a fan: {0}")]
    NotAFan(String),
    #[error("fan is not Q-Gorenstein: {0}")]
    NotQGorenstein(String),
    #[error("vector {0} lies outside the support of the fan")]
    OutsideSupport(String),
    #[error("fan is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("fans have different supports: {0}")]
    SupportMismatch(String),
    #[error("modification is not a divisorial contraction or flip: {0}")]
    NotAMoriMove(String),
    #[error("internal consistency check failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::ScaleMismatch(..) => "ScaleMismatch",
            Error::NotLogTerminal(_) => "NotLogTerminal",
            Error::PoleAtOne => "PoleAtOne",
            Error::PoleAtPoint(_) => "PoleAtPoint",
            Error::ZeroInput => "ZeroInput",
            Error::Parse(_) => "Parse",
            Error::InvalidDatum(_) => "InvalidDatum",
            Error::InconsistentStrata(_) => "InconsistentStrata",
            Error::FormMismatch => "FormMismatch",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::MissingStratum(_) => "MissingStratum",
            Error::Catalog(_) => "Catalog",
            Error::NotAFan(_) => "NotAFan",
            Error::NotQGorenstein(_) => "NotQGorenstein",
            Error::OutsideSupport(_) => "OutsideSupport",
            Error::NotSimplicial(_) => "NotSimplicial",
            Error::SupportMismatch(_) => "SupportMismatch",
            Error::NotAMoriMove(_) => "NotAMoriMove",
            Error::Assertion(_) => "Assertion",
        }
    }

    /// Internal consistency failures, as opposed to bad input.
    pub fn is_assertion(&self) -> bool {
        matches!(self, Error::Assertion(_) | Error::FormMismatch)
    }
}
