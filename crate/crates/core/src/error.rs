use thiserror::Error;

/// Errors raised by the algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::MAX_DIM)]
    DimensionTooLarge(usize),
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("subspace is not radical: basis vector {0} pairs nonzero with e{1}")]
    NotRadical(usize, usize),
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("not a complement of the degenerate line: {0}")]
    NotAComplement(String),
    #[error("algebra has no degenerate generator")]
    NoDegenerateGenerator,
    #[error("e{0} is not a degenerate basis vector")]
    NotDegenerate(usize),
    #[error("map is not an isometry")]
    NotAnIsometry,
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("grade {k} out of range for dimension {dim}")]
    GradeOutOfRange { k: usize, dim: usize },
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("not a homogeneous grade-2 element")]
    NotGrade2,
    #[error("scale must be nonzero")]
    ZeroScale,
    #[error("not a Clifford algebra derivation: {0}")]
    NotADerivation(String),
    #[error("derivation does not fix e0")]
    DoesNotFixE0,
    #[error("derivation image is not contained in the ideal generated by e0")]
    ImageNotInIdeal,
    #[error("vector does not represent a plane (its direction part is zero)")]
    NotAPlane,
    #[error("basis does not span the space: rank {rank} < {needed}")]
    NotSpanning { rank: usize, needed: usize },
    #[error("component does not lie in the complement algebra")]
    NotInComplement,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = GaError> = std::result::Result<T, E>;
