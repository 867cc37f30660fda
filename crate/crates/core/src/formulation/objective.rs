//! The minimized objective: operation costs and startup charges weighted
//! by the duration/probability/discount coefficient, hydro slack penalties
//! on the seasonal weight (no duration factor — those slacks are seasonal,
//! not hourly), group/reserve violation penalties, deficit cost, elastic
//! demand gain (subtracted) and annualized investment charges.

use super::{Builder, FormError};

pub(super) fn emit_objective(b: &mut Builder<'_>) -> Result<(), FormError> {
    let system = &b.view.instance.system;
    let catalog = &b.view.instance.catalog;

    for (pi, project) in catalog.projects.iter().enumerate() {
        b.model
            .set_obj_coeff(b.index.project_x[pi], project.investment_cost)?;
    }

    for (j, plant) in system.thermals.iter().enumerate() {
        for slot in b.slots.iter() {
            let w = b.beta(slot);
            b.model
                .add_obj_coeff(b.index.thermal_gen[j][slot.idx], w * plant.op_cost)?;
            if let Some(st) = &b.index.thermal_startup[j] {
                b.model
                    .add_obj_coeff(st[slot.idx], w * plant.startup_cost)?;
            }
        }
    }

    for (i, plant) in system.hydros.iter().enumerate() {
        for slot in b.slots.iter() {
            let w = b.beta(slot);
            b.model
                .add_obj_coeff(b.index.hydro_gen[i][slot.idx], w * plant.om_cost)?;
        }
        for (s, t) in b.slots.iter_sslots() {
            let w = b.seasonal_weight(s, t);
            let ss = b.slots.sslot(s, t);
            b.model
                .add_obj_coeff(b.index.hydro_slack_storage[i][ss], w * plant.penalty_storage)?;
            b.model
                .add_obj_coeff(b.index.hydro_slack_turbine[i][ss], w * plant.penalty_turbining)?;
            b.model
                .add_obj_coeff(b.index.hydro_slack_outflow[i][ss], w * plant.penalty_outflow)?;
        }
    }

    for (c, group) in system.generation_groups.iter().enumerate() {
        for slot in b.slots.iter() {
            let w = b.beta(slot);
            b.model
                .add_obj_coeff(b.index.group_slack[c][slot.idx], w * group.violation_penalty)?;
        }
    }
    for (c, req) in system.reserve_requirements.iter().enumerate() {
        for slot in b.slots.iter() {
            let w = b.beta(slot);
            b.model
                .add_obj_coeff(b.index.reserve_slack[c][slot.idx], w * req.violation_penalty)?;
        }
    }

    for bus in &system.buses {
        let n = b.sys.bus_idx[&bus.id];
        let Some(di) = b.sys.demand_at[n] else { continue };
        let demand = &system.demands[di];
        for slot in b.slots.iter() {
            let w = b.beta(slot);
            b.model.add_obj_coeff(
                b.index.deficit[n].as_ref().unwrap()[slot.idx],
                w * demand.deficit_cost,
            )?;
            for (si, seg) in demand.elastic.iter().enumerate() {
                b.model
                    .add_obj_coeff(b.index.elastic[n][si][slot.idx], -w * seg.price)?;
            }
        }
    }
    Ok(())
}
