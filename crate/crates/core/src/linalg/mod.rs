//! Exact linear algebra over finite fields, plus generic rank of matrices
//! whose entries are linear forms in indeterminates.

mod matrix;
mod subspace;
mod symbolic;

use thiserror::Error;

pub use matrix::{mat_p_power, rank_kernel, solve_columns, solve_membership, Matrix};
pub use subspace::Subspace;
pub use symbolic::{sampled_rank, symbolic_rank, LinearPolyMatrix, MPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("shape mismatch")]
    ShapeMismatch,
}
