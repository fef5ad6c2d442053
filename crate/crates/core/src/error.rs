use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInversion,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("transformation matrix is singular")]
    SingularTransform,
    #[error("corpus matrix `{0}` is corrupt: {1}")]
    CorpusCorrupt(String, String),
    #[error("unknown corpus matrix `{0}`")]
    UnknownCorpus(String),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("Pfaffian requested for odd size {0}")]
    OddSize(usize),
    #[error("too many variables: {0} (at most {max})", max = crate::poly::MAX_VARS)]
    TooManyVariables(usize),
    #[error("operation not supported over {0}")]
    UnsupportedField(String),
    #[error("input polynomials must be homogeneous")]
    NonHomogeneousInput,
    #[error("requested rank {0} is odd; skew forms have even rank")]
    OddRankRequested(usize),
    #[error("{0}")]
    TooLarge(String),
    #[error("no invertible skew-symmetrizer exists (solution space dimension {0})")]
    NoSkewifier(usize),
    #[error("line basis vectors are linearly dependent")]
    DegenerateLine,
    #[error("pencil does not have constant rank along the line")]
    NonConstantRankOnLine,
    #[error("minimal indices {0} and {1} differ by an odd amount")]
    OddIndexGap(usize, usize),
    #[error("jumping order needs exactly two minimal indices, found {0}")]
    CorankNotTwo(usize),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("rank {0} is not of the form 12s or 12s-4")]
    DisallowedRank(i64),
    #[error("denominator divisible by {0}")]
    DenominatorCollision(u64),
    #[error("parse error: {0}")]
    Parse(String),
}
