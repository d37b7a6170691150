//! Exact rational linear algebra.
//!
//! Everything downstream reduces to rank and membership questions, so all
//! arithmetic is exact. Dense [`Matrix`] values carry small maps (differentials
//! between invariant subspaces, involutions); large sparse systems go through
//! [`Reducer`] directly. Pivoting is leftmost-first, so bases are reproducible.

mod matrix;
mod operator;
mod scalar;
mod sparse;

pub use matrix::{eigenspace_split, quotient_and_section, rank_of_dense, Matrix};
pub use operator::SparseMatrix;
pub use scalar::{format_scalar, frac, int, is_negative, one, parse_scalar, zero, Scalar};
pub use sparse::{
    canonical_basis, intersection, kernel_of_columns, null_space, rank_of, transpose_columns, Insertion,
    Reducer, SparseVec,
};
