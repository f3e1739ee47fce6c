//! Verification suites and their reports.

pub mod report;
pub mod suites;

pub use report::{Check, Provenance, Summary, VerificationReport};
pub use suites::{run, GridConfig, RunError, Suite};
