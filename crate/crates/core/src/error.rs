use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("minimal polynomial is reducible over the rationals: {factor} divides it")]
    Reducible { factor: String },

    #[error("generator image {index} is zero")]
    ZeroGenerator { index: usize },

    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),

    #[error("malformed document at `{field}`: {message}")]
    Malformed { field: String, message: String },

    #[error("prime {prime} ramifies (minimal polynomial not squarefree mod {prime}) and no explicit place data was supplied")]
    RamifiedUnsupported { prime: String },

    #[error("ring membership requires `maximality_attested = true`")]
    MaximalityNotAttested,

    #[error("element is not an S-unit")]
    NotAnSUnit,

    #[error("product formula violated in coordinate {coordinate}: sum of Lyapunov entries is {sum}")]
    ProductFormulaViolation { coordinate: usize, sum: String },

    #[error("rank of the Lyapunov vectors cannot be decided at the precision ceiling")]
    RankUndecidable,

    #[error("system is not mixing")]
    NotMixing,

    #[error("exhaustive set exceeds the cap of {cap} elements")]
    SetTooLarge { cap: usize },

    #[error("enclosure {enclosure} does not isolate an integer at the precision ceiling")]
    EnclosureNotIntegral { enclosure: String },

    #[error("unsupported backend shape: {0}")]
    UnsupportedBackendShape(String),

    #[error("representative table does not contain the zero representative")]
    RepsMissingZero,

    #[error("representative table is not a section of the quotient map: {0}")]
    RepsNotSection(String),

    #[error("submodule predicate is not invariant under the action; witness {witness}")]
    PredicateNotInvariant { witness: String },

    #[error("precision ceiling of {bits} bits reached while {context}")]
    PrecisionExhausted { bits: u32, context: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn malformed(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Malformed {
            field: field.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by the input document rather than by arithmetic.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::Reducible { .. }
                | Error::ZeroGenerator { .. }
                | Error::CompositeCharacteristic(_)
                | Error::Malformed { .. }
                | Error::MaximalityNotAttested
                | Error::RepsMissingZero
                | Error::RepsNotSection(_)
                | Error::PredicateNotInvariant { .. }
                | Error::InvalidArgument(_)
        )
    }
}
