use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to be
/// rendered without access to the originating length function.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("edge `{id}` has non-positive length {length}")]
    NonPositiveLength { id: String, length: String },
    #[error("edge id `{0}` appears more than once")]
    DuplicateEdge(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("a length function needs at least {min} edges, got {got}")]
    TooFewEdges { got: usize, min: usize },
    #[error("{what} refuses {got} edges (limit {max}); pass the force flag to lift the guard")]
    TooManyEdges {
        what: &'static str,
        got: usize,
        max: usize,
    },
    #[error("length function is not generic: a signed sum of the lengths vanishes")]
    NotGeneric,
    #[error("polygon space is empty: longest edge {longest} exceeds the sum {rest} of the others")]
    EmptySpace { longest: String, rest: String },
    #[error("subset {0} is not lopsided")]
    NotLopsided(String),
    #[error("subset is empty")]
    EmptySubset,
    #[error("members {0} and {1} overlap without one containing the other")]
    LaminarViolation(String, String),
    #[error("subset {0} must be a proper non-empty subset of the edges")]
    TrivialSubset(String),
    #[error("value {t} lies outside the moment image [{lo}, {hi}]")]
    OutOfImage { t: String, lo: String, hi: String },
    #[error("bending set is not full")]
    NotFull,
    #[error("bending set spans a torus of dimension {got}, a toric action needs {expected}")]
    NotToric { got: usize, expected: usize },
    #[error("polytope dimension {0} exceeds the supported maximum of 3")]
    DimensionTooLarge(usize),
    #[error("polytopes have different dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),
    #[error("invalid document: {0}")]
    Json(String),
    #[error("missing argument: {0}")]
    MissingArgument(String),
    #[error("unknown example id `{0}`")]
    UnknownExample(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI's structured errors.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ParseRational(_) => "parse_rational",
            Error::NonPositiveLength { .. } => "non_positive_length",
            Error::DuplicateEdge(_) => "duplicate_edge",
            Error::UnknownEdge(_) => "unknown_edge",
            Error::TooFewEdges { .. } => "too_few_edges",
            Error::TooManyEdges { .. } => "too_many_edges",
            Error::NotGeneric => "not_generic",
            Error::EmptySpace { .. } => "empty_space",
            Error::NotLopsided(_) => "not_lopsided",
            Error::EmptySubset => "empty_subset",
            Error::LaminarViolation(..) => "laminar_violation",
            Error::TrivialSubset(_) => "trivial_subset",
            Error::OutOfImage { .. } => "t_out_of_image",
            Error::NotFull => "not_full",
            Error::NotToric { .. } => "not_toric",
            Error::DimensionTooLarge(_) => "dimension_too_large",
            Error::DimensionMismatch(..) => "dimension_mismatch",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::DegeneratePolytope(_) => "degenerate_polytope",
            Error::Json(_) => "invalid_json",
            Error::MissingArgument(_) => "missing_argument",
            Error::UnknownExample(_) => "unknown_example",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
