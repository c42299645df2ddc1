use alloc::string::String;

/// Every domain failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus is not irreducible: {0}")]
    ReducibleModulus(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("invalid ideal data: {0}")]
    InvalidIdeal(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("no inverse supplied for {0}")]
    MissingInverse(String),
}

impl Error {
    /// Short stable identifier, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::DivisionByZero => "division_by_zero",
            Error::ReducibleModulus(_) => "reducible_modulus",
            Error::FieldMismatch => "field_mismatch",
            Error::AlgebraMismatch => "algebra_mismatch",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::InvalidField(_) => "invalid_field",
            Error::InvalidGraph(_) => "invalid_graph",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::UnknownEdge(_) => "unknown_edge",
            Error::NotAPath(_) => "not_a_path",
            Error::InvalidIdeal(_) => "invalid_ideal",
            Error::InvalidWitness(_) => "invalid_witness",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::InvalidModule(_) => "invalid_module",
            Error::Unsupported(_) => "unsupported",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::VerificationFailed(_) => "verification_failed",
            Error::MissingInverse(_) => "missing_inverse",
        }
    }
}
