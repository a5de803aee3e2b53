//! Mechanical verification of the family's identities at sampled points.

pub mod check;
mod sample;
pub mod suite;
pub mod theorem;

pub use check::{check_identity, CheckPoint, IdentityCheckReport, Verdict, DEFAULT_EPSILON};
pub use suite::{run_suite, SuiteOutcome, SuiteSpec, TheoremSummary};
pub use theorem::{Expectation, TheoremId};
