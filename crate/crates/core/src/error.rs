use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty support")]
    EmptySupport,

    #[error("empty list of supports")]
    EmptyList,

    #[error("polynomial system must contain at least one polynomial")]
    EmptySystem,

    #[error("generators are not full-dimensional (affine rank {rank} in dimension {dim})")]
    NotFullDimensional { rank: usize, dim: usize },

    #[error("codegree search exceeded dilation {cap}; generators are not full-dimensional")]
    CodegreeCapExceeded { cap: u32 },

    #[error("lattice condition failed: missing origin")]
    MissingOrigin,

    #[error("lattice condition failed: lattice not full")]
    LatticeNotFull,

    #[error("coordinate undefined: zero ratio raised to a negative power")]
    CoordinateUndefined,

    #[error("compatibility violation: shift {beta:?} of polynomial {index} reaches exponent {alpha:?} outside the row support")]
    Compatibility {
        index: usize,
        beta: Vec<u32>,
        alpha: Vec<u32>,
    },

    #[error("row support of the extension is not a superset of the current one")]
    IndexMisalignment,

    #[error("negative dilation factor: system degrees too small for the closed-form tuple")]
    DegenerateDilation,

    #[error(
        "rank condition failed: tuple too small or the zero-dimensionality assumption is violated"
    )]
    RankConditionFailed,

    #[error("rank condition never met up to dilation {cap}")]
    RankNeverMet { cap: u32 },

    #[error("triangular factor ill-conditioned; re-draw the denominator polynomial")]
    IllConditionedBasis,

    #[error("degenerate pencil: both matrices are numerically zero")]
    DegeneratePencil,

    #[error("eigendecomposition failed to converge (LAPACK info {0})")]
    EigFailed(i32),

    #[error("eigenvalue at the origin exponent is numerically zero; not a root candidate")]
    EigenvalueNotRoot,

    #[error("not overdetermined: need root count < #support - dimension")]
    NotOverdetermined,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
