//! Unified Apostol Hermite-Genocchi polynomials.
//!
//! * [`series`]: truncated power series over exact rationals or big floats.
//! * [`families`]: the unified family, its numbers, the classical Apostol
//!   families, Hermite polynomials and the explicit lattice sum.
//! * [`identity`]: mechanical verification of the family's summation,
//!   symmetry and reduction identities.
//! * [`dist`]: the generalized Hermite-Genocchi lattice distribution with its
//!   reliability functions.
//! * [`cli`]: the `hermite-genocchi` command-line front end.

pub mod coeff;
pub mod error;
pub mod series;
pub mod summation;
pub mod families;
pub mod identity;
pub mod dist;
pub mod cli;

pub use coeff::{Coefficient, Mode};
pub use error::{Error, Result};
pub use series::TruncatedSeries;
