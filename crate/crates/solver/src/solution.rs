use thiserror::Error;

/// Outcome class of a solve.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// Stopped at a node/time limit or at the configured relative gap with
    /// an unproven incumbent.
    GapLimit,
}

/// Solve diagnostics. The incumbent/bound traces record every improvement
/// so monotonicity is checkable from the outside.
#[derive(Clone, Debug, Default)]
pub struct SolveStats<T> {
    pub simplex_iterations: u64,
    pub nodes: u64,
    /// Lagrangian dual objective at the final LP basis (weak-duality witness).
    pub dual_objective: Option<T>,
    /// Incumbent objective after each improvement (non-increasing).
    pub incumbent_trace: Vec<T>,
    /// Global lower bound at each node pop (non-decreasing).
    pub bound_trace: Vec<T>,
    /// Unbounded direction over the model variables, when status is Unbounded.
    pub unbounded_ray: Option<Vec<T>>,
    /// Infeasibility multipliers over the rows, when status is Infeasible.
    pub farkas: Option<Vec<T>>,
}

/// Result of a solve: status, primal point, objective, row duals and the
/// proven bound gap.
///
/// `primal` and `duals` are indexed like the model's variables and rows.
/// Duals of a MIP solve are those of the LP obtained by fixing the binaries
/// at their solution values. On Infeasible/Unbounded, `primal` is empty and
/// `objective` is infinite.
#[derive(Clone, Debug)]
pub struct Solution<T> {
    pub status: SolveStatus,
    pub primal: Vec<T>,
    pub objective: T,
    pub duals: Vec<T>,
    pub gap: T,
    pub stats: SolveStats<T>,
}

impl<T: gtep_milp::Scalar> Solution<T> {
    pub fn value(&self, var: gtep_milp::VarId) -> T {
        self.primal[var.index()]
    }

    pub fn dual(&self, row: gtep_milp::RowId) -> T {
        self.duals[row.index()]
    }
}

/// Failures that prevent a solve from producing a trustworthy solution.
/// Numerical trouble is always reported, never silently absorbed.
#[derive(Debug, Error)]
pub enum SolveError {
    #[error("model must be sealed before solving")]
    NotSealed,
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("solver configuration error: {0}")]
    Config(String),
    #[error("external solver process failure: {msg}\n--- solver log ---\n{log}")]
    Process { msg: String, log: String },
    #[error("external solution parse failure: {msg}\n--- solution file ---\n{log}")]
    Parse { msg: String, log: String },
    #[error("external solution mismatch: {msg}\n--- solver log ---\n{log}")]
    Mismatch { msg: String, log: String },
    #[error(transparent)]
    Model(#[from] gtep_milp::ModelError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
