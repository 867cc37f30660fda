use gtep_milp::Scalar;

/// Branching variable choice. Only most-fractional is implemented; the enum
/// exists so the rule is replaceable without touching call sites.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum BranchingRule {
    #[default]
    MostFractional,
}

/// Open-node selection. Only best-bound is implemented.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum NodeSelection {
    #[default]
    BestBound,
}

/// Solver parameters. All tolerance comparisons use the absolute-plus-
/// relative form `|a - b| <= tol * (1 + |b|)`.
#[derive(Clone, Debug)]
pub struct SolveConfig<T> {
    /// Primal feasibility tolerance for bounds and row activities.
    pub feasibility_tolerance: T,
    /// Dual feasibility (reduced-cost) tolerance.
    pub optimality_tolerance: T,
    /// Relative MIP gap at which branch and bound stops.
    pub mip_gap: T,
    /// Maximum branch-and-bound nodes; `None` means unlimited.
    pub node_limit: Option<u64>,
    /// Wall-clock limit in seconds; `None` means unlimited.
    pub time_limit: Option<f64>,
    pub branching: BranchingRule,
    pub node_selection: NodeSelection,
    /// Basis refactorization interval in pivots.
    pub refactor_every: usize,
    /// Consecutive degenerate pivots before Bland's rule engages.
    pub bland_after: usize,
}

impl<T: Scalar> Default for SolveConfig<T> {
    fn default() -> Self {
        Self {
            feasibility_tolerance: T::of(1e-7),
            optimality_tolerance: T::of(1e-7),
            mip_gap: T::of(1e-6),
            node_limit: None,
            time_limit: None,
            branching: BranchingRule::default(),
            node_selection: NodeSelection::default(),
            refactor_every: 100,
            bland_after: 400,
        }
    }
}

impl<T: Scalar> SolveConfig<T> {
    /// Tight-gap variant for oracle comparisons in tests.
    pub fn tight() -> Self {
        Self {
            mip_gap: T::of(1e-9),
            ..Self::default()
        }
    }
}

/// Absolute-plus-relative closeness test.
pub fn close_enough<T: Scalar>(a: T, b: T, tol: T) -> bool {
    (a - b).abs() <= tol * (T::one() + b.abs())
}
