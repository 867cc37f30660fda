//! Hand-built toy instances for the formulation tests: one scenario, one
//! season, one typical day of weight 365 unless a test says otherwise.

use std::collections::BTreeMap;

use gtep_core::catalog::{DecisionKind, Project, ProjectCatalog, TargetKind};
use gtep_core::instance::{Instance, StudyHorizon};
use gtep_core::scenario::{HourlyProfile, ScenarioSet, SeasonalProfile};
use gtep_core::system::*;
use gtep_core::time::{Season, TimeStructure, HOURS_PER_DAY};

pub fn base_instance(name: &str) -> Instance {
    Instance {
        name: name.to_string(),
        system: PowerSystem::default(),
        catalog: ProjectCatalog::default(),
        time: TimeStructure {
            seasons: vec![Season {
                name: None,
                months: (1..=12).collect(),
                typical_day_weights: vec![365.0],
            }],
            season_discount_rate: 0.0,
            day_assignment: None,
        },
        scenarios: ScenarioSet {
            probabilities: vec![1.0],
            ..ScenarioSet::default()
        },
        horizon: StudyHorizon::default(),
    }
}

/// Hourly profile with one value per hour of the (single) typical day,
/// replicated over seasons and scenarios.
pub fn hourly(instance: &Instance, per_hour: [f64; HOURS_PER_DAY]) -> HourlyProfile {
    HourlyProfile {
        values: (0..instance.scenarios.num_scenarios())
            .map(|_| {
                instance
                    .time
                    .seasons
                    .iter()
                    .map(|s| {
                        (0..s.typical_day_weights.len())
                            .map(|_| per_hour.to_vec())
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn flat(instance: &Instance, value: f64) -> HourlyProfile {
    hourly(instance, [value; HOURS_PER_DAY])
}

pub fn seasonal(instance: &Instance, value: f64) -> SeasonalProfile {
    SeasonalProfile {
        values: (0..instance.scenarios.num_scenarios())
            .map(|_| vec![value; instance.time.num_seasons()])
            .collect(),
    }
}

pub fn bus(id: &str) -> Bus {
    Bus {
        id: id.into(),
        name: None,
        area_id: None,
    }
}

pub fn thermal(id: &str, bus: &str, g_max: f64, op_cost: f64) -> ThermalPlant {
    ThermalPlant {
        id: id.into(),
        bus_id: bus.into(),
        g_min: 0.0,
        g_max,
        ramp_up: g_max,
        ramp_down: g_max,
        op_cost,
        startup_cost: 0.0,
        has_commitment: false,
    }
}

pub fn hydro(id: &str, bus: &str, g_max: f64, u_max: f64, rho: f64) -> HydroPlant {
    HydroPlant {
        id: id.into(),
        bus_id: bus.into(),
        v_min: 0.0,
        v_max: u_max,
        u_min: 0.0,
        u_max,
        q_min: 0.0,
        q_max: None,
        rho,
        g_max,
        upstream_ids: vec![],
        om_cost: 0.0,
        penalty_storage: 1e5,
        penalty_turbining: 1e5,
        penalty_outflow: 1e5,
        initial_storage: None,
    }
}

pub fn battery(id: &str, bus: &str, power: f64, energy: f64, eta: f64) -> Battery {
    Battery {
        id: id.into(),
        bus_id: bus.into(),
        v_max: energy,
        charge_max: power,
        discharge_max: power,
        eta_charge: eta,
        eta_discharge: eta,
    }
}

pub fn circuit(id: &str, from: &str, to: &str, cap: f64, susceptance: f64) -> TransmissionLine {
    TransmissionLine {
        id: id.into(),
        from_bus: from.into(),
        to_bus: to.into(),
        kind: LineKind::Circuit,
        f_max_fwd: cap,
        f_max_bwd: cap,
        susceptance: Some(susceptance),
    }
}

pub fn demand(bus: &str, deficit_cost: f64) -> DemandSpec {
    DemandSpec {
        bus_id: bus.into(),
        deficit_cost,
        elastic: vec![],
    }
}

/// Obligatory zero-cost project covering an existing asset.
pub fn existing(kind: TargetKind, id: &str) -> Project {
    Project {
        id: format!("p_{}", id),
        target_kind: kind,
        target_id: id.into(),
        investment_cost: 0.0,
        decision: DecisionKind::Obligatory,
    }
}

/// Binary candidate project.
pub fn candidate(kind: TargetKind, id: &str, annual_cost: f64) -> Project {
    Project {
        id: format!("p_{}", id),
        target_kind: kind,
        target_id: id.into(),
        investment_cost: annual_cost,
        decision: DecisionKind::Binary,
    }
}

pub fn fixed_map(entries: &[(&str, f64)]) -> BTreeMap<String, f64> {
    entries
        .iter()
        .map(|(k, v)| (format!("p_{}", k), *v))
        .collect()
}

/// Assert a clean validation report before a test uses the instance.
pub fn assert_valid(instance: &Instance) {
    let report = instance.validate();
    assert!(report.is_clean(), "invalid toy instance:\n{}", report);
}
