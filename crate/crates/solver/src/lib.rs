//! Desk-scale MILP solving: a bounded-variable revised simplex core with a
//! dense LU-factored basis, branch-and-bound over binary variables, and a
//! subprocess backend contract for delegating to an external solver.
//!
//! The embedded solver is the default backend. Every solution is re-checked
//! against the model row by row before being returned, regardless of which
//! backend produced it.

mod check;
mod config;
mod external;
mod lu;
mod mip;
mod simplex;
mod solution;

pub use check::{check_primal, dual_objective, ResidualReport};
pub use config::{close_enough, BranchingRule, NodeSelection, SolveConfig};
pub use external::{solve_external, ExternalSolver};
pub use mip::solve_mip;
pub use simplex::{solve_lp, SimplexSolver};
pub use solution::{SolveError, SolveStats, SolveStatus, Solution};

use gtep_milp::{MilpModel, Scalar};

/// Solver backend selection.
#[derive(Clone, Debug, Default)]
pub enum Backend {
    /// The in-process simplex / branch-and-bound solver.
    #[default]
    Embedded,
    /// An external solver invoked as a subprocess on an MPS file.
    External(ExternalSolver),
}

/// Solve a sealed model with the chosen backend. Semantics are identical
/// across backends: minimization, binaries honored, duals valid for the LP
/// with integers fixed at their solution values.
pub fn solve<T: Scalar>(
    model: &MilpModel<T>,
    cfg: &SolveConfig<T>,
    backend: &Backend,
) -> Result<Solution<T>, SolveError> {
    match backend {
        Backend::Embedded => solve_mip(model, cfg),
        Backend::External(ext) => solve_external(model, cfg, ext),
    }
}

/// `f64` alias for the common case.
pub type Config = SolveConfig<f64>;
