//! Evaluators for the unified family and the classical families it reduces to.

pub mod apostol;
pub mod hermite;
pub mod lattice;
pub mod params;
pub mod unified;

pub use apostol::{apostol_series, apostol_value, reference_family, unified_apostol_reference, ApostolKind, ApostolParams};
pub use hermite::{gen_hermite, hermite_kampe, GenHermite};
pub use lattice::{explicit_lattice, explicit_lattice_sum};
pub use params::{HermiteSpec, UnifiedParams};
pub use unified::{unified_numbers, unified_poly, unified_series, unified_values};
