use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("inhomogeneous polynomial: found total degrees {found:?}")]
    Inhomogeneous { found: Vec<u32> },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },

    #[error("variable space mismatch: expected {expected}, got {got}")]
    SpaceMismatch { expected: String, got: String },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("zero input: {0}")]
    ZeroInput(String),

    #[error("invalid point: all coordinates vanish")]
    ZeroPoint,

    #[error("conic has no isolated singular point: Gram matrix has rank {rank}")]
    ConicRank { rank: usize },

    #[error("singular cubic: {0}")]
    SingularCubic(String),

    #[error("degenerate Cayleyan: {0}")]
    DegenerateCayleyan(String),

    #[error("Cayleyan singular: {0}")]
    CayleyanSingular(String),

    #[error("Cayleyan is not a member of the Hesse pencil: {0}")]
    NotHessePencil(String),

    #[error("no candidate matches the hyperplane: {0}")]
    NoCandidateMatch(String),

    #[error("not a smooth cubic (syzygy kernel dimension {kernel_dim}); stability is only decided for smooth curves")]
    OutsideHypothesis { kernel_dim: usize },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("insufficient samples: {usable} usable out of {requested} requested")]
    InsufficientSamples { usable: usize, requested: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable category, used by the CLI error records.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Inhomogeneous { .. } => "inhomogeneous",
            Error::DegreeMismatch { .. } => "degree-mismatch",
            Error::SpaceMismatch { .. } => "space-mismatch",
            Error::NonSquare { .. } => "non-square",
            Error::Dimension(_) => "dimension",
            Error::ZeroInput(_) => "zero-input",
            Error::ZeroPoint => "zero-point",
            Error::ConicRank { .. } => "conic-rank",
            Error::SingularCubic(_) => "singular-cubic",
            Error::DegenerateCayleyan(_) => "degenerate-cayleyan",
            Error::CayleyanSingular(_) => "cayleyan-singular",
            Error::NotHessePencil(_) => "not-hesse-pencil",
            Error::NoCandidateMatch(_) => "no-candidate",
            Error::OutsideHypothesis { .. } => "outside-hypothesis",
            Error::Numeric(_) => "numeric",
            Error::InsufficientSamples { .. } => "insufficient-samples",
            Error::InvalidArgument(_) => "invalid-argument",
        }
    }
}
