//! Translation of one planning year into a sparse MILP: investment logic,
//! thermal commitment and ramps, hydro cascades with cyclic seasonal
//! storage, renewables, batteries, the DC network with disjunctive
//! voltage-law rows for candidate circuits, generation-group bands,
//! reserve co-optimization, nodal load balance and the discounted
//! objective.
//!
//! Emission order and all naming are deterministic, so rows can be
//! addressed by name from tests and external tools:
//! hourly families are named `fam[t,d,h,s,id]` (1-based indices), seasonal
//! families `fam[t,s,id]`, investment variables `x[project]`.

mod balance;
mod battery;
mod groups;
mod hydro;
mod index;
mod invest;
mod network;
mod objective;
mod renewable;
mod reserves;
mod sysindex;
mod thermal;
pub mod verify;

pub use index::{Slot, SlotIndex, VariableIndex};

use std::collections::BTreeMap;

use gtep_milp::{Integrality, Model, ModelError, RowId, VarId};
use thiserror::Error;

use crate::instance::Instance;
use crate::scenario::ScenarioSet;
use crate::time::beta;
use sysindex::SystemIndex;

#[derive(Debug, Error)]
pub enum FormError {
    #[error("unresolved reference: {0}")]
    UnknownReference(String),
    #[error("model construction: {0}")]
    Model(#[from] ModelError),
    #[error("variable count mismatch: built {built}, expected {expected}")]
    CountMismatch { built: usize, expected: usize },
}

/// The slice of an instance one yearly problem sees: scenario data for the
/// year, the demand growth multiplier, and the investment decisions fixed
/// by earlier years (project id → value; binaries use 0/1, continuous
/// decisions may carry fractions).
#[derive(Clone, Debug)]
pub struct YearView<'a> {
    pub instance: &'a Instance,
    /// 1-based study year.
    pub year: usize,
    pub demand_scale: f64,
    pub scenarios: &'a ScenarioSet,
    pub fixed: BTreeMap<String, f64>,
}

impl<'a> YearView<'a> {
    pub fn for_year(instance: &'a Instance, year: usize, fixed: BTreeMap<String, f64>) -> Self {
        Self {
            instance,
            year,
            demand_scale: instance.demand_scale(year),
            scenarios: instance.scenarios_for_year(year),
            fixed,
        }
    }

    pub fn single_year(instance: &'a Instance) -> Self {
        Self::for_year(instance, 1, BTreeMap::new())
    }
}

/// A sealed yearly model with its semantic index.
#[derive(Clone, Debug)]
pub struct Formulation {
    pub model: Model,
    pub index: VariableIndex,
    pub warnings: Vec<String>,
}

pub(crate) struct Builder<'a> {
    pub view: &'a YearView<'a>,
    pub sys: SystemIndex,
    pub slots: SlotIndex,
    pub model: Model,
    pub index: VariableIndex,
    pub warnings: Vec<String>,
}

impl<'a> Builder<'a> {
    fn beta(&self, slot: Slot) -> f64 {
        beta(
            slot.t,
            slot.d,
            slot.s,
            &self.view.instance.time,
            self.view.scenarios,
        )
    }

    /// Seasonal discount weight `p_s / (1 + rt)^t` (no duration factor).
    fn seasonal_weight(&self, s: usize, t: usize) -> f64 {
        self.view.scenarios.probabilities[s]
            / (1.0 + self.view.instance.time.season_discount_rate).powi(t as i32)
    }

    fn cont(&mut self, name: String, lo: f64, hi: f64) -> Result<VarId, FormError> {
        Ok(self.model.add_variable(&name, lo, hi, Integrality::Continuous)?)
    }

    fn row_le(&mut self, name: String, terms: &[(VarId, f64)], rhs: f64) -> Result<RowId, FormError> {
        Ok(self
            .model
            .add_constraint(&name, terms, gtep_milp::RowSense::Le, rhs)?)
    }

    fn row_ge(&mut self, name: String, terms: &[(VarId, f64)], rhs: f64) -> Result<RowId, FormError> {
        Ok(self
            .model
            .add_constraint(&name, terms, gtep_milp::RowSense::Ge, rhs)?)
    }

    fn row_eq(&mut self, name: String, terms: &[(VarId, f64)], rhs: f64) -> Result<RowId, FormError> {
        Ok(self
            .model
            .add_constraint(&name, terms, gtep_milp::RowSense::Eq, rhs)?)
    }
}

pub(crate) fn slot_name(fam: &str, slot: Slot, id: &str) -> String {
    format!(
        "{}[{},{},{},{},{}]",
        fam,
        slot.t + 1,
        slot.d + 1,
        slot.h + 1,
        slot.s + 1,
        id
    )
}

pub(crate) fn sslot_name(fam: &str, t: usize, s: usize, id: &str) -> String {
    format!("{}[{},{},{}]", fam, t + 1, s + 1, id)
}

/// Build the sealed MILP for one planning year. Fixed decisions become
/// tight variable bounds last, so they override the obligatory default; a
/// fixed value conflicting with the investment logic surfaces as
/// infeasibility at solve time, not here.
pub fn build_yearly_model(view: &YearView<'_>) -> Result<Formulation, FormError> {
    let instance = view.instance;
    let sys = SystemIndex::build(&instance.system, &instance.catalog)?;
    let slots = SlotIndex::new(&instance.time, view.scenarios);
    let mut b = Builder {
        view,
        sys,
        slots,
        model: Model::new(&format!("{}_y{}", instance.name, view.year)),
        index: VariableIndex::default(),
        warnings: Vec::new(),
    };

    invest::emit_investment_logic(&mut b)?;
    thermal::emit_thermal(&mut b)?;
    hydro::emit_hydro(&mut b)?;
    renewable::emit_renewables(&mut b)?;
    battery::emit_batteries(&mut b)?;
    network::emit_network(&mut b)?;
    groups::emit_generation_groups(&mut b)?;
    reserves::emit_reserves(&mut b)?;
    balance::emit_load_balance(&mut b)?;
    objective::emit_objective(&mut b)?;

    // fixed decisions become tight bounds, overriding defaults
    for (project_id, &value) in &view.fixed {
        if let Some(pi) = instance.catalog.project_index(project_id) {
            b.model.set_bounds(b.index.project_x[pi], value, value)?;
        } else {
            return Err(FormError::UnknownReference(format!(
                "fixed decision for unknown project {:?}",
                project_id
            )));
        }
    }

    let expected = expected_variable_count(view);
    let built = b.model.num_vars();
    if built != expected {
        return Err(FormError::CountMismatch { built, expected });
    }

    b.model.seal();
    Ok(Formulation {
        model: b.model,
        index: b.index,
        warnings: b.warnings,
    })
}

/// Closed-form variable count from entity counts and the index space;
/// asserted against the built model on every instance.
pub fn expected_variable_count(view: &YearView<'_>) -> usize {
    let sys = &view.instance.system;
    let slots = SlotIndex::new(&view.instance.time, view.scenarios);
    let h = slots.num_slots();
    let ss = slots.num_sslots();
    let vs = slots.num_vslots();

    let in_reserve = |ids: &mut dyn Iterator<Item = bool>| ids.filter(|&b| b).count();
    let mut thermal_members = sys.thermals.iter().map(|t| {
        sys.reserve_requirements
            .iter()
            .any(|r| r.thermal_ids.contains(&t.id))
    });
    let mut hydro_members = sys.hydros.iter().map(|hy| {
        sys.reserve_requirements
            .iter()
            .any(|r| r.hydro_ids.contains(&hy.id))
    });
    let mut battery_members = sys.batteries.iter().map(|ba| {
        sys.reserve_requirements
            .iter()
            .any(|r| r.battery_ids.contains(&ba.id))
    });

    let committed = sys.thermals.iter().filter(|t| t.has_commitment).count();
    let segments: usize = sys.demands.iter().map(|d| d.elastic.len()).sum();

    view.instance.catalog.projects.len()
        + sys.thermals.len() * h                   // generation
        + committed * 2 * h                        // commitment + startup
        + in_reserve(&mut thermal_members) * h
        + sys.hydros.len() * (h + vs + 5 * ss)     // gen, storage, u/spill/3 slacks
        + in_reserve(&mut hydro_members) * h
        + sys.renewables.len() * h
        + sys.batteries.len() * 3 * h
        + in_reserve(&mut battery_members) * h
        + sys.lines.len() * 2 * h
        + sys.buses.len() * h                      // angles
        + sys.demands.len() * h                    // deficit
        + segments * h
        + sys.generation_groups.len() * h
        + sys.reserve_requirements.len() * h
}
