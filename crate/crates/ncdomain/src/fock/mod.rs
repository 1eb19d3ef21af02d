//! Truncated full Fock space machinery: basis indexing, weight tables,
//! universal weighted shifts, operator evaluation, and domain membership.

pub mod coherent;
pub mod dense;
pub mod eig;
pub mod export;
pub mod index;
pub mod member;
pub mod shifts;
pub mod sparse;
pub mod weights;

pub use coherent::{char_eval_check, coherent_vector, CharCheck};
pub use dense::CMat;
pub use eig::{hermitian_eigen, hermitian_eigenvalues, min_eig_hermitian, spectral_norm};
pub use export::{ShiftExport, WeightExport};
pub use index::{FockIndex, DEFAULT_DIM_CAP};
pub use member::{
    defect, defect_sparse, eval_poly, is_member, is_member_sparse, MembershipReport,
    OperatorTuple, SparseTuple, DEFAULT_MEMBER_TOL,
};
pub use shifts::ShiftFamily;
pub use sparse::ColSparse;
pub use weights::{brute_force_weight, WeightTable};

#[derive(Debug, thiserror::Error)]
pub enum FockError {
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("basis would need {requested} words, over the cap of {cap}")]
    ResourceGuard { requested: usize, cap: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NonHermitian { residual: f64 },
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    EigNotConverged { sweeps: usize },
    #[error("weight at basis index {index} does not fit a finite double")]
    NonFiniteWeight { index: usize },
    #[error("truncation level {level} is below the required {needed}")]
    TruncationTooSmall { level: usize, needed: usize },
    #[error("tolerance must be positive, got {tol}")]
    NonPositiveTolerance { tol: f64 },
}
