use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("number is not finite")]
    NotFinite,
}

impl ParseScalarError {
    pub(crate) fn invalid(text: &str) -> Self {
        Self::Invalid(text.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseScalarError),

    #[error("invalid market: {0}")]
    InvalidMarket(String),

    #[error("invalid surplus table: {0}")]
    InvalidSurplus(String),

    #[error("correlation {rho} infeasible for priors ({p_firm}, {p_worker}): cell {cell} would be negative")]
    InfeasibleCorrelation {
        rho: String,
        p_firm: String,
        p_worker: String,
        cell: &'static str,
    },

    #[error("correlation {rho} with priors ({p_firm}, {p_worker}) needs an irrational covariance; use float mode")]
    InexactCorrelation {
        rho: String,
        p_firm: String,
        p_worker: String,
    },

    #[error("realized mode requires a realized type for {0}")]
    MissingRealizedTypes(String),

    #[error("unknown agent `{0}`")]
    UnknownAgent(String),

    #[error("agents {0} and {1} are not on opposite sides")]
    SameSide(String, String),

    #[error("market has {firms}x{workers} agents, enumeration cap is {cap} per side")]
    SizeCapExceeded {
        firms: usize,
        workers: usize,
        cap: usize,
    },

    #[error("no sort key: need realized types or distinct priors")]
    NoSortKey,

    #[error("market is not flagged as having distinct types")]
    NoDistinctTypes,

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("invalid test: {0}")]
    InvalidTest(String),

    #[error("invalid sequential protocol: {0}")]
    InvalidProtocol(String),

    #[error("concept {0} needs a sequential protocol")]
    MissingProtocol(&'static str),

    #[error("concept {0} is not available here")]
    UnsupportedConcept(&'static str),

    #[error("improvement path must start from an individually rational allocation")]
    NonIrStart,

    #[error("improvement path did not terminate within {0} steps")]
    PathDidNotTerminate(usize),

    #[error("stable set is empty")]
    EmptyStableSet,

    #[error("inclusion chain violated: {0}")]
    InclusionViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
