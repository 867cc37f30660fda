//! Independent verification of a solved yearly model: conservation
//! residuals, cyclic identities, investment gating and voltage-law
//! residuals, all recomputed from instance data and solution values
//! without touching the model rows.

use gtep_milp::VarId;
use gtep_solver::Solution;

use crate::catalog::TargetKind;
use crate::system::LineKind;

use super::{Formulation, SlotIndex, YearView};

/// Worst-case residuals over a solution. All entries are magnitudes; a
/// healthy solution keeps every one at or below 1e-6.
#[derive(Clone, Copy, Debug, Default)]
pub struct SolutionCheck {
    /// MW mismatch of the nodal balance at any hourly cell.
    pub load_balance: f64,
    /// hm³ mismatch of any seasonal water balance row.
    pub water_balance: f64,
    /// hm³ gap between start-of-year and end-of-year hydro storage.
    pub hydro_cycle: f64,
    /// MWh drift of any battery over one typical day.
    pub battery_cycle: f64,
    /// Largest operational value of an entity whose project is unbuilt.
    pub gating: f64,
    /// Voltage-law residual of any built circuit.
    pub kvl_built: f64,
}

impl SolutionCheck {
    pub fn worst(&self) -> f64 {
        [
            self.load_balance,
            self.water_balance,
            self.hydro_cycle,
            self.battery_cycle,
            self.gating,
            self.kvl_built,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn within(&self, tol: f64) -> bool {
        self.worst() <= tol
    }
}

/// Recompute every conservation identity and gate from scratch.
pub fn verify_solution(view: &YearView<'_>, f: &Formulation, sol: &Solution<f64>) -> SolutionCheck {
    let system = &view.instance.system;
    let slots = SlotIndex::new(&view.instance.time, view.scenarios);
    let value = |v: VarId| sol.primal[v.index()];
    let mut check = SolutionCheck::default();

    // nodal balance
    for (n, bus) in system.buses.iter().enumerate() {
        let demand = system.demands.iter().find(|d| d.bus_id == bus.id);
        for slot in slots.iter() {
            let mut acc = 0.0;
            for (j, t) in system.thermals.iter().enumerate() {
                if t.bus_id == bus.id {
                    acc += value(f.index.thermal_gen[j][slot.idx]);
                }
            }
            for (i, hplant) in system.hydros.iter().enumerate() {
                if hplant.bus_id == bus.id {
                    acc += value(f.index.hydro_gen[i][slot.idx]);
                }
            }
            for (l, r) in system.renewables.iter().enumerate() {
                if r.bus_id == bus.id {
                    acc += value(f.index.renewable_gen[l][slot.idx]);
                }
            }
            for (bi, bat) in system.batteries.iter().enumerate() {
                if bat.bus_id == bus.id {
                    acc += bat.eta_discharge * value(f.index.battery_discharge[bi][slot.idx])
                        - value(f.index.battery_charge[bi][slot.idx]);
                }
            }
            for (k, line) in system.lines.iter().enumerate() {
                let flow = value(f.index.flow_fwd[k][slot.idx]) - value(f.index.flow_bwd[k][slot.idx]);
                if line.to_bus == bus.id {
                    acc += flow;
                }
                if line.from_bus == bus.id {
                    acc -= flow;
                }
            }
            let mut rhs = 0.0;
            if let Some(d) = demand {
                rhs = view.scenarios.inelastic_demand[&d.bus_id]
                    .get(slot.s, slot.t, slot.d, slot.h)
                    * view.demand_scale;
                for seg in &f.index.elastic[n] {
                    acc -= value(seg[slot.idx]);
                }
                acc += value(f.index.deficit[n].as_ref().unwrap()[slot.idx]);
            }
            check.load_balance = check.load_balance.max((acc - rhs).abs());
        }
    }

    // water balance and the cyclic identity
    for (i, plant) in system.hydros.iter().enumerate() {
        let upstream: Vec<usize> = plant
            .upstream_ids
            .iter()
            .filter_map(|u| system.hydros.iter().position(|h| &h.id == u))
            .collect();
        for s in 0..slots.scenarios {
            for t in 0..slots.seasons {
                let ss = slots.sslot(s, t);
                let inflow = view.scenarios.inflow[&plant.id].get(s, t);
                let mut gain = inflow
                    - value(f.index.hydro_turbine[i][ss])
                    - value(f.index.hydro_spill[i][ss]);
                for &m in &upstream {
                    gain += value(f.index.hydro_turbine[m][ss]) + value(f.index.hydro_spill[m][ss]);
                }
                let dv = value(f.index.hydro_storage[i][slots.vslot(s, t + 1)])
                    - value(f.index.hydro_storage[i][slots.vslot(s, t)]);
                check.water_balance = check.water_balance.max((dv - gain).abs());
            }
            let first = value(f.index.hydro_storage[i][slots.vslot(s, 0)]);
            let last = value(f.index.hydro_storage[i][slots.vslot(s, slots.seasons)]);
            check.hydro_cycle = check.hydro_cycle.max((last - first).abs());
        }
    }

    // battery daily neutrality
    for (bi, bat) in system.batteries.iter().enumerate() {
        for (s, t, d) in slots.iter_days() {
            let mut net = 0.0;
            for h in 0..crate::time::HOURS_PER_DAY {
                let idx = slots.slot(s, t, d, h);
                net += bat.eta_charge * value(f.index.battery_charge[bi][idx])
                    - value(f.index.battery_discharge[bi][idx]);
            }
            check.battery_cycle = check.battery_cycle.max(net.abs());
        }
    }

    // investment gating
    for (pi, project) in view.instance.catalog.projects.iter().enumerate() {
        let x = value(f.index.project_x[pi]);
        if x > 1e-6 {
            continue;
        }
        let mut worst: f64 = 0.0;
        let mut track = |vars: &Vec<VarId>| {
            for &v in vars {
                worst = worst.max(value(v).abs());
            }
        };
        match project.target_kind {
            TargetKind::Thermal => {
                if let Some(j) = system.thermals.iter().position(|t| t.id == project.target_id) {
                    track(&f.index.thermal_gen[j]);
                    if let Some(r) = &f.index.thermal_reserve[j] {
                        track(r);
                    }
                }
            }
            TargetKind::Hydro => {
                if let Some(i) = system.hydros.iter().position(|h| h.id == project.target_id) {
                    track(&f.index.hydro_gen[i]);
                    track(&f.index.hydro_storage[i]);
                    track(&f.index.hydro_turbine[i]);
                    if let Some(r) = &f.index.hydro_reserve[i] {
                        track(r);
                    }
                }
            }
            TargetKind::Renewable => {
                if let Some(l) = system.renewables.iter().position(|r| r.id == project.target_id) {
                    track(&f.index.renewable_gen[l]);
                }
            }
            TargetKind::Battery => {
                if let Some(bi) = system.batteries.iter().position(|x| x.id == project.target_id) {
                    track(&f.index.battery_storage[bi]);
                    track(&f.index.battery_charge[bi]);
                    track(&f.index.battery_discharge[bi]);
                    if let Some(r) = &f.index.battery_reserve[bi] {
                        track(r);
                    }
                }
            }
            TargetKind::Line => {
                if let Some(k) = system.lines.iter().position(|l| l.id == project.target_id) {
                    track(&f.index.flow_fwd[k]);
                    track(&f.index.flow_bwd[k]);
                }
            }
        }
        check.gating = check.gating.max(worst);
    }

    // voltage law on built circuits
    for (k, line) in system.lines.iter().enumerate() {
        if line.kind != LineKind::Circuit {
            continue;
        }
        let pi = view
            .instance
            .catalog
            .projects
            .iter()
            .position(|p| p.target_kind == TargetKind::Line && p.target_id == line.id)
            .expect("validated instance");
        if value(f.index.project_x[pi]) < 1.0 - 1e-6 {
            continue;
        }
        let gamma = line.susceptance.unwrap_or(0.0);
        let from = system.bus_index(&line.from_bus).unwrap();
        let to = system.bus_index(&line.to_bus).unwrap();
        for slot in slots.iter() {
            let residual = value(f.index.flow_fwd[k][slot.idx])
                - value(f.index.flow_bwd[k][slot.idx])
                - gamma
                    * (value(f.index.theta[from][slot.idx]) - value(f.index.theta[to][slot.idx]));
            check.kvl_built = check.kvl_built.max(residual.abs());
        }
    }

    check
}
