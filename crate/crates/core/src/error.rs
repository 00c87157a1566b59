use thiserror::Error;

/// Every failure the library can report.
///
/// The CLI maps these onto exit codes via [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("minimal polynomial t^2 - ({c1})t - ({c0}) is reducible over Q")]
    ReducibleMinimalPolynomial { c1: String, c0: String },
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("line {0} has all coefficients zero")]
    ZeroLine(usize),
    #[error("transformation matrix is singular")]
    SingularTransform,
    #[error("all lines pass through one point (rank <= 2 arrangement)")]
    Pencil,
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("no syzygy or no consistent resolution within degree cap {0}")]
    CapExceeded(usize),
    #[error("inconsistent resolution: {0}")]
    InconsistentResolution(String),
    #[error("parameter point violates constraint `{0}`")]
    ConstraintViolated(String),
    #[error("parameter point is excluded: `{0}` vanishes")]
    ExcludedParameter(String),
    #[error("denominator `{0}` vanishes at the parameter point")]
    DenominatorZero(String),
    #[error("columns {0} and {1} of the realization matrix are proportional")]
    DegenerateLines(usize, usize),
    #[error("component `{0}` has no points over the base field")]
    ComponentEmptyOverBaseField(String),
    #[error("size mismatch: arrangement has {arrangement} lines, matroid has {matroid} elements")]
    SizeMismatch { arrangement: usize, matroid: usize },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// 2 input error, 3 mathematical inconsistency, 4 cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InconsistentResolution(_) => 3,
            Error::CapExceeded(_) => 4,
            _ => 2,
        }
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::MalformedInput(_) => "MalformedInput",
            Error::ReducibleMinimalPolynomial { .. } => "ReducibleMinimalPolynomial",
            Error::DuplicateLine(..) => "DuplicateLine",
            Error::ZeroLine(_) => "ZeroLine",
            Error::SingularTransform => "SingularTransform",
            Error::Pencil => "Pencil",
            Error::InvalidMatroid(_) => "InvalidMatroid",
            Error::CapExceeded(_) => "CapExceeded",
            Error::InconsistentResolution(_) => "InconsistentResolution",
            Error::ConstraintViolated(_) => "ConstraintViolated",
            Error::ExcludedParameter(_) => "ExcludedParameter",
            Error::DenominatorZero(_) => "DenominatorZero",
            Error::DegenerateLines(..) => "DegenerateLines",
            Error::ComponentEmptyOverBaseField(_) => "ComponentEmptyOverBaseField",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::Unknown { .. } => "Unknown",
            Error::Io { .. } => "Io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
