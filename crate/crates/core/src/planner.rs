//! Rolling-horizon expansion: solve year 1, fix what was built, advance to
//! year 2 with those decisions frozen, and so on. Projects outside their
//! entry window are forced off; the built set is non-decreasing across
//! years by construction.

use std::collections::BTreeMap;

use gtep_solver::{Backend, SolveConfig, SolveError, SolveStatus, Solution};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::DecisionKind;
use crate::formulation::{build_yearly_model, FormError, Formulation, YearView};
use crate::instance::Instance;
use crate::report::{compute_costs, YearCosts};
use crate::validate::ValidationReport;

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("instance failed validation:\n{0}")]
    Invalid(ValidationReport),
    #[error("formulation failed: {0}")]
    Formulation(#[from] FormError),
    #[error("solver failed in year {year}: {source}")]
    Solver {
        year: usize,
        #[source]
        source: SolveError,
    },
    #[error("year {year} ended {status:?}; with deficit slack present this signals bad input")]
    YearFailed { year: usize, status: SolveStatus },
}

/// Decision record for one project.
#[derive(Clone, Debug, Serialize)]
pub struct PlanProject {
    pub id: String,
    /// 1-based year the decision was taken, or `None` for never.
    pub decision_year: Option<usize>,
    /// Decision value at that year (1.0 for binaries; continuous projects
    /// may carry fractions).
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct YearOutcome {
    pub year: usize,
    pub objective: f64,
    /// Objective discounted to year 1 at the annual rate.
    pub discounted_objective: f64,
    pub costs: YearCosts,
    pub new_projects: Vec<String>,
    pub deficit_energy: f64,
    pub reserve_shortfall: f64,
}

/// The expansion plan: per-project decisions and per-year summaries.
#[derive(Clone, Debug, Serialize)]
pub struct ExpansionPlan {
    pub projects: Vec<PlanProject>,
    pub years: Vec<YearOutcome>,
    pub total_discounted_cost: f64,
}

/// A completed run, keeping the models and solutions for reporting.
pub struct PlanRun {
    pub plan: ExpansionPlan,
    pub years: Vec<SolvedYear>,
}

pub struct SolvedYear {
    pub year: usize,
    pub formulation: Formulation,
    pub solution: Solution<f64>,
    pub fixed: BTreeMap<String, f64>,
}

/// Standard annuity: `capex · r / (1 − (1+r)^−n)`, degenerating to
/// `capex / n` at a zero rate.
pub fn annualize_cost(capex: f64, lifetime_years: u32, annual_rate: f64) -> f64 {
    let n = lifetime_years.max(1) as f64;
    if annual_rate == 0.0 {
        capex / n
    } else {
        capex * annual_rate / (1.0 - (1.0 + annual_rate).powf(-n))
    }
}

/// Run the fix-and-advance loop over the instance's horizon.
pub fn run_rolling_horizon(
    instance: &Instance,
    cfg: &SolveConfig<f64>,
    backend: &Backend,
) -> Result<PlanRun, PlanError> {
    let report = instance.validate();
    if !report.is_clean() {
        return Err(PlanError::Invalid(report));
    }

    let mut decided: BTreeMap<String, (usize, f64)> = BTreeMap::new();
    let mut years = Vec::with_capacity(instance.horizon.years);
    let mut outcomes = Vec::with_capacity(instance.horizon.years);
    let mut total_discounted = 0.0;

    for year in 1..=instance.horizon.years {
        let mut fixed: BTreeMap<String, f64> = BTreeMap::new();
        for project in &instance.catalog.projects {
            if let Some((_, value)) = decided.get(&project.id) {
                fixed.insert(project.id.clone(), *value);
                continue;
            }
            let window = instance
                .horizon
                .entry_windows
                .get(&project.id)
                .copied()
                .unwrap_or_default();
            let open = year >= window.earliest && window.latest.map_or(true, |l| year <= l);
            if !open {
                fixed.insert(project.id.clone(), 0.0);
            }
        }

        let view = YearView::for_year(instance, year, fixed.clone());
        let formulation = build_yearly_model(&view)?;
        let solution = gtep_solver::solve(&formulation.model, cfg, backend)
            .map_err(|source| PlanError::Solver { year, source })?;
        if solution.status != SolveStatus::Optimal {
            return Err(PlanError::YearFailed {
                year,
                status: solution.status,
            });
        }

        let mut new_projects = Vec::new();
        for (pi, project) in instance.catalog.projects.iter().enumerate() {
            if decided.contains_key(&project.id) || fixed.get(&project.id) == Some(&0.0) {
                continue;
            }
            let x = solution.primal[formulation.index.project_x[pi].index()];
            let built = match project.decision {
                DecisionKind::Binary | DecisionKind::Obligatory => x >= 0.5,
                DecisionKind::Continuous => x > 1e-6,
            };
            if built {
                let value = match project.decision {
                    DecisionKind::Continuous => x,
                    _ => 1.0,
                };
                decided.insert(project.id.clone(), (year, value));
                new_projects.push(project.id.clone());
            }
        }

        let costs = compute_costs(&view, &formulation, &solution);
        let discount = (1.0 + instance.horizon.annual_discount_rate).powi(-(year as i32 - 1));
        total_discounted += solution.objective * discount;
        outcomes.push(YearOutcome {
            year,
            objective: solution.objective,
            discounted_objective: solution.objective * discount,
            costs: costs.clone(),
            new_projects,
            deficit_energy: costs.deficit_energy_mwh,
            reserve_shortfall: costs.reserve_shortfall_mw,
        });
        years.push(SolvedYear {
            year,
            formulation,
            solution,
            fixed,
        });
    }

    let projects = instance
        .catalog
        .projects
        .iter()
        .map(|p| {
            let (decision_year, value) = match decided.get(&p.id) {
                Some(&(y, v)) => (Some(y), v),
                None => (None, 0.0),
            };
            PlanProject {
                id: p.id.clone(),
                decision_year,
                value,
            }
        })
        .collect();

    Ok(PlanRun {
        plan: ExpansionPlan {
            projects,
            years: outcomes,
            total_discounted_cost: total_discounted,
        },
        years,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annuity_zero_rate_is_straight_line() {
        assert!((annualize_cost(100.0, 10, 0.0) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn annuity_one_year_pays_everything() {
        assert!((annualize_cost(100.0, 1, 0.0) - 100.0).abs() < 1e-12);
    }

    #[test]
    fn annuity_matches_formula() {
        let a = annualize_cost(100.0, 20, 0.1);
        let direct = 100.0 * 0.1 / (1.0 - 1.1f64.powi(-20));
        assert!((a - direct).abs() < 1e-12);
        assert!((a - 11.745962477254576).abs() < 1e-9, "{}", a);
    }
}
