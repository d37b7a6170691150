//! Exact computation of relative Lie algebra cohomology for reductive pairs,
//! their pure Sullivan models, and the cohomological obstruction to compact
//! Clifford-Klein forms.

pub mod cartan;
pub mod complex;
pub mod error;
pub mod graded;
pub mod invariant;
pub mod lie;
pub mod linalg;
pub mod obstruction;
pub mod report;
pub mod sullivan;
pub mod transgression;

pub use error::{Error, Result};
