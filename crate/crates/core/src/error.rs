use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
    #[error("variable index {index} out of range for {num_vars} variables")]
    VarIndexOutOfRange { index: usize, num_vars: usize },
    #[error("target degree {target} is below the total degree {actual}")]
    HomogenizeDegreeTooSmall { target: u32, actual: u32 },
    #[error("flip bound {bound} in variable {var} is below the degree {degree}")]
    FlipDegreeTooSmall { var: usize, bound: u32, degree: u32 },
    #[error("matrix has {rows} rows, expected {expected}")]
    MatrixRowMismatch { rows: usize, expected: usize },
    #[error("matrix has {cols} columns, expected {expected}")]
    MatrixColMismatch { cols: usize, expected: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    MatrixNotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has a negative entry at ({row},{col})")]
    NegativeMatrixEntry { row: usize, col: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected a univariate or homogeneous bivariate polynomial")]
    NotBivariateHomogeneous,
    #[error("polynomial is not a quadratic form")]
    NotQuadratic,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("zero vector is not a valid ray")]
    ZeroRay,
    #[error("ray has dimension {dim}, expected {expected}")]
    RayDimMismatch { dim: usize, expected: usize },
    #[error("cone is not full-dimensional (rank {rank} < ambient dimension {ambient})")]
    NotFullDimensional { rank: usize, ambient: usize },
    #[error("cone is not pointed or admits no strictly positive functional")]
    NotPointedOrNoCommonSide,
    #[error("orthantal reduction rejected: {0}")]
    OrthantalReduction(String),
    #[error("monomial ideal spec rejected: {0}")]
    InvalidIdealSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
