//! Test-only oracles and generators shared by the test suites: a naive
//! full-tableau simplex (independent of the revised-simplex code path),
//! random LP and random planning-instance generators, and brute-force
//! enumeration oracles for investment decisions.
//!
//! Nothing here ships; the crate is a dev-dependency everywhere it is used.

pub mod instances;
pub mod oracle;
pub mod randlp;
pub mod solfile;

pub use oracle::{solve_tableau, TableauOutcome, TableauStatus};
pub use randlp::random_feasible_lp;
