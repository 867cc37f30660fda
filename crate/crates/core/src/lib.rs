//! Generation and transmission expansion planning engine.
//!
//! Co-optimizes investment and hourly operation (energy plus reserves) as a
//! single MILP per planning year over a typical-day time aggregation, with
//! a rolling-horizon pass across years. The crate is organized around:
//!
//! - [`system`]: the static power-system data model and its invariants;
//! - [`catalog`]: candidate investment projects and inter-project logic
//!   (precedence, exclusivity, association, aggregate capacity bands);
//! - [`time`] and [`cluster`]: seasons, typical days, duration weights,
//!   discount coefficients, and a typical-day suggestion helper;
//! - [`scenario`]: per-scenario inflows, renewable output, reserve
//!   requirement and demand profiles;
//! - [`instance`]: the self-contained JSON instance document (with optional
//!   sidecar CSV profiles) bundling all of the above plus the study horizon;
//! - [`validate`]: instance validation and the hydro cascade ordering;
//! - [`formulation`]: translation of one planning year into a sparse MILP;
//! - [`planner`]: the year-by-year fix-and-advance expansion loop;
//! - [`report`]: cost decomposition and dispatch extraction from solutions.

pub mod catalog;
pub mod cluster;
pub mod formulation;
pub mod instance;
pub mod planner;
pub mod report;
pub mod scenario;
pub mod system;
pub mod time;
pub mod validate;

pub use instance::Instance;
pub use validate::{topological_order, validate_system, Finding, ValidationReport};
