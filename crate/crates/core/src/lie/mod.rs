//! Lie algebras over the rationals, their cochain complexes and the builtin
//! catalog of real forms.
//!
//! Sign convention: the Chevalley–Eilenberg differential is
//! `(dα)(X_1, …, X_{p+1}) = Σ_{i<j} α([X_i, X_j], X_1, …, X̂_i, …, X̂_j, …)`
//! with no alternating sign, so `d x^k = Σ_{i<j} c_{ij}^k x^i ∧ x^j`. With this
//! `d`, the Lie derivative `L(X) = ι(X)d + dι(X)` acts on `g*` by
//! `L(X_a)x^k = Σ_j c_{aj}^k x^j`, and every action on dual spaces in this
//! crate uses that same formula.

mod algebra;
pub mod catalog;
pub mod cochains;
pub mod json;
mod subalgebra;

pub use algebra::LieAlgebra;
pub use subalgebra::Subalgebra;
