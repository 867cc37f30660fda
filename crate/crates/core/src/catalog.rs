//! Candidate investment decisions and inter-project logic. Existing assets
//! are projects with an obligatory decision (fixed at one), so the
//! formulation emits one uniform constraint set for everything.

use serde::{Deserialize, Serialize};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionKind {
    /// Build or don't (0/1).
    Binary,
    /// Fractional build in [0, 1]; incompatible with thermal commitment.
    Continuous,
    /// Fixed at one (existing assets, mandated builds).
    Obligatory,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    Thermal,
    Hydro,
    Renewable,
    Battery,
    Line,
}

/// One investment decision over a target entity. `investment_cost` is the
/// annualized charge applied in every yearly objective the project is
/// active in (see [`crate::planner::annualize_cost`]).
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Project {
    pub id: String,
    pub target_kind: TargetKind,
    pub target_id: String,
    /// $ per year
    pub investment_cost: f64,
    pub decision: DecisionKind,
}

/// Aggregate band over weighted project decisions:
/// `lo ≤ Σ w_p x_p ≤ hi` with either side optional. Weights are installed
/// capacity, firm energy or firm capacity depending on the study.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CapacityGroup {
    pub id: String,
    /// (project id, weight)
    pub weights: Vec<(String, f64)>,
    #[serde(default)]
    pub lo: Option<f64>,
    #[serde(default)]
    pub hi: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
pub struct ProjectCatalog {
    pub projects: Vec<Project>,
    /// (required, dependent): the dependent can only be built if the
    /// required project is. One row per ordered pair as listed; list both
    /// orientations to tie two projects together.
    #[serde(default)]
    pub precedence: Vec<(String, String)>,
    /// At most one project of each set may be built.
    #[serde(default)]
    pub exclusivity: Vec<Vec<String>>,
    /// Same row shape as precedence, kept separate because the data means
    /// something different (joint developments rather than staging).
    #[serde(default)]
    pub association: Vec<(String, String)>,
    #[serde(default)]
    pub capacity_groups: Vec<CapacityGroup>,
}

impl ProjectCatalog {
    pub fn project_index(&self, id: &str) -> Option<usize> {
        self.projects.iter().position(|p| p.id == id)
    }

    /// The project covering an entity, if any.
    pub fn project_for(&self, kind: TargetKind, target_id: &str) -> Option<&Project> {
        self.projects
            .iter()
            .find(|p| p.target_kind == kind && p.target_id == target_id)
    }
}
