use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("all coefficients vanish; the zero form is not a point of projective space")]
    ZeroForm,

    #[error("degree {degree} needs {} coefficients, got {got}", degree + 1)]
    LengthMismatch { degree: usize, got: usize },

    #[error("operator of degree {operator} cannot act on a form of degree {form}")]
    DegreeTooHigh { operator: usize, form: usize },

    #[error("degree {k} is outside 0..={d}")]
    DegreeOutOfRange { k: usize, d: usize },

    #[error("forms of degree 0 have no rank")]
    ConstantForm,

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("root set is not stable under z -> -1/conj(z)")]
    NotSigmaStable,

    #[error("no coordinate change y -> y + m x gives a pencil with nonzero leading coefficient")]
    DegenerateDehomogenization,

    #[error("pencil generators must have equal degree >= 2 (got {0} and {1})")]
    PencilDegrees(usize, usize),

    #[error("no square-free member found in the degree {degree} apolar system")]
    CertificateSearchExhausted { degree: usize },

    #[error("apolar system has dimension {dim}, not a pencil")]
    NotAPencil { dim: usize },

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
