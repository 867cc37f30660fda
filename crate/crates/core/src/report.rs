//! Cost decomposition and dispatch extraction, recomputed from solution
//! values and input prices (never read back from the objective vector), so
//! reports double as a check on the solver's objective.

use gtep_milp::VarId;
use gtep_solver::Solution;
use serde::Serialize;

use crate::formulation::{Formulation, SlotIndex, YearView};
use crate::time::beta;

/// Cost terms of one yearly solution, in the objective's units.
#[derive(Clone, Debug, Default, Serialize)]
pub struct YearCosts {
    pub investment: f64,
    pub generation: f64,
    pub startup: f64,
    pub violation: f64,
    pub deficit: f64,
    pub elastic_gain: f64,
    pub total: f64,
    /// Weighted unserved energy (MWh over the year).
    pub deficit_energy_mwh: f64,
    /// Largest hourly reserve shortfall (MW).
    pub reserve_shortfall_mw: f64,
}

/// Decompose the objective of a solved year by walking the index.
pub fn compute_costs(view: &YearView<'_>, f: &Formulation, sol: &Solution<f64>) -> YearCosts {
    let system = &view.instance.system;
    let time = &view.instance.time;
    let slots = SlotIndex::new(time, view.scenarios);
    let value = |v: VarId| sol.primal[v.index()];
    let mut out = YearCosts::default();

    for (pi, project) in view.instance.catalog.projects.iter().enumerate() {
        out.investment += project.investment_cost * value(f.index.project_x[pi]);
    }

    for (j, plant) in system.thermals.iter().enumerate() {
        for slot in slots.iter() {
            let w = beta(slot.t, slot.d, slot.s, time, view.scenarios);
            out.generation += w * plant.op_cost * value(f.index.thermal_gen[j][slot.idx]);
            if let Some(st) = &f.index.thermal_startup[j] {
                out.startup += w * plant.startup_cost * value(st[slot.idx]);
            }
        }
    }
    for (i, plant) in system.hydros.iter().enumerate() {
        for slot in slots.iter() {
            let w = beta(slot.t, slot.d, slot.s, time, view.scenarios);
            out.generation += w * plant.om_cost * value(f.index.hydro_gen[i][slot.idx]);
        }
        for s in 0..slots.scenarios {
            for t in 0..slots.seasons {
                let w = view.scenarios.probabilities[s]
                    / (1.0 + time.season_discount_rate).powi(t as i32);
                let ss = slots.sslot(s, t);
                out.violation += w
                    * (plant.penalty_storage * value(f.index.hydro_slack_storage[i][ss])
                        + plant.penalty_turbining * value(f.index.hydro_slack_turbine[i][ss])
                        + plant.penalty_outflow * value(f.index.hydro_slack_outflow[i][ss]));
            }
        }
    }
    for (c, group) in system.generation_groups.iter().enumerate() {
        for slot in slots.iter() {
            let w = beta(slot.t, slot.d, slot.s, time, view.scenarios);
            out.violation += w * group.violation_penalty * value(f.index.group_slack[c][slot.idx]);
        }
    }
    for (c, req) in system.reserve_requirements.iter().enumerate() {
        for slot in slots.iter() {
            let w = beta(slot.t, slot.d, slot.s, time, view.scenarios);
            let shortfall = value(f.index.reserve_slack[c][slot.idx]);
            out.violation += w * req.violation_penalty * shortfall;
            out.reserve_shortfall_mw = out.reserve_shortfall_mw.max(shortfall);
        }
    }
    for (n, bus) in system.buses.iter().enumerate() {
        let Some(demand) = system.demands.iter().find(|d| d.bus_id == bus.id) else {
            continue;
        };
        for slot in slots.iter() {
            let w = beta(slot.t, slot.d, slot.s, time, view.scenarios);
            let deficit = value(f.index.deficit[n].as_ref().unwrap()[slot.idx]);
            out.deficit += w * demand.deficit_cost * deficit;
            out.deficit_energy_mwh += w * deficit;
            for (si, seg) in demand.elastic.iter().enumerate() {
                out.elastic_gain += w * seg.price * value(f.index.elastic[n][si][slot.idx]);
            }
        }
    }
    out.total =
        out.investment + out.generation + out.startup + out.violation + out.deficit
            - out.elastic_gain;
    out
}

/// One row of the dispatch report. Seasonal families (hydro volumes)
/// leave `typical_day`/`hour` unset.
#[derive(Clone, Debug, Serialize)]
pub struct DispatchRecord {
    pub year: usize,
    pub scenario: usize,
    pub season: usize,
    pub typical_day: Option<usize>,
    pub hour: Option<usize>,
    pub family: &'static str,
    pub entity: String,
    pub value: f64,
}

/// Flatten a solved year into dispatch records in a fixed family order.
pub fn dispatch_records(
    view: &YearView<'_>,
    f: &Formulation,
    sol: &Solution<f64>,
) -> Vec<DispatchRecord> {
    let system = &view.instance.system;
    let slots = SlotIndex::new(&view.instance.time, view.scenarios);
    let value = |v: VarId| sol.primal[v.index()];
    let mut out = Vec::new();

    let mut hourly = |family: &'static str, entity: &str, vars: &Vec<VarId>| {
        for slot in slots.iter() {
            out.push(DispatchRecord {
                year: view.year,
                scenario: slot.s + 1,
                season: slot.t + 1,
                typical_day: Some(slot.d + 1),
                hour: Some(slot.h + 1),
                family,
                entity: entity.to_string(),
                value: value(vars[slot.idx]),
            });
        }
    };

    for (j, plant) in system.thermals.iter().enumerate() {
        hourly("thermal_gen", &plant.id, &f.index.thermal_gen[j]);
        if let Some(gam) = &f.index.thermal_commit[j] {
            hourly("thermal_commit", &plant.id, gam);
        }
        if let Some(st) = &f.index.thermal_startup[j] {
            hourly("thermal_startup", &plant.id, st);
        }
        if let Some(r) = &f.index.thermal_reserve[j] {
            hourly("thermal_reserve", &plant.id, r);
        }
    }
    for (i, plant) in system.hydros.iter().enumerate() {
        hourly("hydro_gen", &plant.id, &f.index.hydro_gen[i]);
        if let Some(r) = &f.index.hydro_reserve[i] {
            hourly("hydro_reserve", &plant.id, r);
        }
    }
    for (l, plant) in system.renewables.iter().enumerate() {
        hourly("renewable_gen", &plant.id, &f.index.renewable_gen[l]);
    }
    for (bi, battery) in system.batteries.iter().enumerate() {
        hourly("battery_storage", &battery.id, &f.index.battery_storage[bi]);
        hourly("battery_charge", &battery.id, &f.index.battery_charge[bi]);
        hourly("battery_discharge", &battery.id, &f.index.battery_discharge[bi]);
        if let Some(r) = &f.index.battery_reserve[bi] {
            hourly("battery_reserve", &battery.id, r);
        }
    }
    for (k, line) in system.lines.iter().enumerate() {
        hourly("flow_fwd", &line.id, &f.index.flow_fwd[k]);
        hourly("flow_bwd", &line.id, &f.index.flow_bwd[k]);
    }
    for (n, bus) in system.buses.iter().enumerate() {
        hourly("bus_angle", &bus.id, &f.index.theta[n]);
        if let Some(deficit) = &f.index.deficit[n] {
            hourly("deficit", &bus.id, deficit);
        }
        for (si, seg) in f.index.elastic[n].iter().enumerate() {
            hourly("elastic_demand", &format!("{}:{}", bus.id, si), seg);
        }
    }
    for (c, group) in system.generation_groups.iter().enumerate() {
        hourly("group_violation", &group.id, &f.index.group_slack[c]);
    }
    for (c, req) in system.reserve_requirements.iter().enumerate() {
        hourly("reserve_violation", &req.id, &f.index.reserve_slack[c]);
    }
    drop(hourly);

    // nodal marginal costs from the load-balance duals of the fixed-integer LP
    for (n, bus) in system.buses.iter().enumerate() {
        for slot in slots.iter() {
            out.push(DispatchRecord {
                year: view.year,
                scenario: slot.s + 1,
                season: slot.t + 1,
                typical_day: Some(slot.d + 1),
                hour: Some(slot.h + 1),
                family: "nodal_price",
                entity: bus.id.clone(),
                value: sol.duals[f.index.load_balance_rows[n][slot.idx].index()],
            });
        }
    }

    // seasonal hydro trajectories
    for (i, plant) in system.hydros.iter().enumerate() {
        for s in 0..slots.scenarios {
            for t in 0..=slots.seasons {
                out.push(DispatchRecord {
                    year: view.year,
                    scenario: s + 1,
                    season: t,
                    typical_day: None,
                    hour: None,
                    family: "hydro_storage",
                    entity: plant.id.clone(),
                    value: value(f.index.hydro_storage[i][slots.vslot(s, t)]),
                });
            }
            for t in 0..slots.seasons {
                let ss = slots.sslot(s, t);
                for (family, vars) in [
                    ("hydro_turbine", &f.index.hydro_turbine[i]),
                    ("hydro_spill", &f.index.hydro_spill[i]),
                    ("hydro_slack_storage", &f.index.hydro_slack_storage[i]),
                    ("hydro_slack_turbine", &f.index.hydro_slack_turbine[i]),
                    ("hydro_slack_outflow", &f.index.hydro_slack_outflow[i]),
                ] {
                    out.push(DispatchRecord {
                        year: view.year,
                        scenario: s + 1,
                        season: t + 1,
                        typical_day: None,
                        hour: None,
                        family,
                        entity: plant.id.clone(),
                        value: value(vars[ss]),
                    });
                }
            }
        }
    }
    out
}
