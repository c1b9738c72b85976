use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. Variant names double as the
/// diagnostic names printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown generator `{name}` at position {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("operands live over different alphabets")]
    AlphabetMismatch,
    #[error("automorphism check needs an inverse witness")]
    MissingWitness,
    #[error("series truncated at different caps ({0} vs {1})")]
    CapMismatch(u32, u32),
    #[error("operands use different coefficient rings")]
    RingMismatch,
    #[error("operation requires rational coefficients")]
    RingNotRational,
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),
    #[error("cap {cap} too small, need at least {needed}")]
    CapTooSmall { needed: u32, cap: u32 },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("not a Lie element; residual: {residual}")]
    NotALieElement { residual: String },
    #[error("filtration degree too low: required {required}, found {found}")]
    DegreeTooLow { required: u32, found: String },
    #[error("structure mismatch: {0}")]
    StructureMismatch(String),
    #[error("incompatible truncated pair: {0}")]
    IncompatiblePair(String),
    #[error("map is not an automorphism")]
    NotAnAutomorphism,
    #[error("map does not preserve the series: {0}")]
    NotFiltrationPreserving(String),
    #[error("operator is not filtration-unipotent: {0}")]
    NotUnipotent(String),
    #[error("could not invert expansion: {0}")]
    InversionFailure(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short, stable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SyntaxError { .. } => "SyntaxError",
            Error::UnknownGenerator { .. } => "UnknownGenerator",
            Error::InvalidAlphabet(_) => "InvalidAlphabet",
            Error::AlphabetMismatch => "AlphabetMismatch",
            Error::MissingWitness => "MissingWitness",
            Error::CapMismatch(..) => "CapMismatch",
            Error::RingMismatch => "RingMismatch",
            Error::RingNotRational => "RingNotRational",
            Error::BadConstantTerm(_) => "BadConstantTerm",
            Error::CapTooSmall { .. } => "CapTooSmall",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::NotALieElement { .. } => "NotALieElement",
            Error::DegreeTooLow { .. } => "DegreeTooLow",
            Error::StructureMismatch(_) => "StructureMismatch",
            Error::IncompatiblePair(_) => "IncompatiblePair",
            Error::NotAnAutomorphism => "NotAnAutomorphism",
            Error::NotFiltrationPreserving(_) => "NotFiltrationPreserving",
            Error::NotUnipotent(_) => "NotUnipotent",
            Error::InversionFailure(_) => "InversionFailure",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}
