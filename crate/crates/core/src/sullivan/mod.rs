//! Pure Sullivan algebras, the relative model of an algebra map between
//! them, and the spectral sequence of its filtration.

mod desk;
mod pair;
mod pure;
mod relative;
mod spectral;

pub use desk::{desk_instance, desk_instances, DeskInstance};
pub use pair::{coordinates_in, nested_subalgebra, pair_relative_model, PairModel};
pub use pure::PureSullivan;
pub use relative::{induced_ranks, RelativeModel};
pub use spectral::SpectralSequence;
