//! Free graded-commutative algebras `Λ(odd) ⊗ S(even)` with Koszul signs.

mod element;
mod generators;
mod index;
mod ops;

pub use element::{Exponents, GradedElement, Monomial};
pub use index::{ElementSpan, MonomialIndex};
pub use generators::{Generator, GeneratorSet, Parity, MAX_ODD};
pub use ops::{basis_of_degree, operator_matrix, AlgebraMap, DegreeBasis, Derivation};

#[cfg(test)]
mod tests;
