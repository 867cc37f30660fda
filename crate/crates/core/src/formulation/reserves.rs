//! Reserve co-optimization: headroom variables for every plant or battery
//! that belongs to at least one requirement, headroom rows against the
//! commitment/investment-gated capacity, and the per-requirement market
//! row with a penalized shortfall.

use super::{slot_name, Builder, FormError};

pub(super) fn emit_reserves(b: &mut Builder<'_>) -> Result<(), FormError> {
    let system = &b.view.instance.system;

    // reserve variables and headroom rows, one set per providing entity
    for (j, plant) in system.thermals.iter().enumerate() {
        if !b.sys.thermal_in_reserve[j] {
            continue;
        }
        let x = b.index.project_x[b.sys.thermal_project[j]];
        let mut reserve = Vec::with_capacity(b.slots.num_slots());
        for slot in b.slots.iter() {
            // the ramp cap applies directly as a variable bound
            reserve.push(b.cont(slot_name("r_th", slot, &plant.id), 0.0, plant.ramp_up)?);
        }
        for slot in b.slots.iter() {
            let gate = match &b.index.thermal_commit[j] {
                Some(gam) => (gam[slot.idx], -plant.g_max),
                None => (x, -plant.g_max),
            };
            b.row_le(
                slot_name("rs_th", slot, &plant.id),
                &[
                    (b.index.thermal_gen[j][slot.idx], 1.0),
                    (reserve[slot.idx], 1.0),
                    gate,
                ],
                0.0,
            )?;
        }
        b.index.thermal_reserve[j] = Some(reserve);
    }

    for (i, plant) in system.hydros.iter().enumerate() {
        if !b.sys.hydro_in_reserve[i] {
            continue;
        }
        let x = b.index.project_x[b.sys.hydro_project[i]];
        let mut reserve = Vec::with_capacity(b.slots.num_slots());
        for slot in b.slots.iter() {
            reserve.push(b.cont(slot_name("r_hy", slot, &plant.id), 0.0, f64::INFINITY)?);
        }
        for slot in b.slots.iter() {
            b.row_le(
                slot_name("rs_hy", slot, &plant.id),
                &[
                    (b.index.hydro_gen[i][slot.idx], 1.0),
                    (reserve[slot.idx], 1.0),
                    (x, -plant.g_max),
                ],
                0.0,
            )?;
        }
        b.index.hydro_reserve[i] = Some(reserve);
    }

    for (bi, battery) in system.batteries.iter().enumerate() {
        if !b.sys.battery_in_reserve[bi] {
            continue;
        }
        let x = b.index.project_x[b.sys.battery_project[bi]];
        let eta = battery.eta_discharge;
        let mut reserve = Vec::with_capacity(b.slots.num_slots());
        for slot in b.slots.iter() {
            reserve.push(b.cont(slot_name("r_ba", slot, &battery.id), 0.0, f64::INFINITY)?);
        }
        for slot in b.slots.iter() {
            b.row_le(
                slot_name("rs_ba1", slot, &battery.id),
                &[
                    (b.index.battery_discharge[bi][slot.idx], eta),
                    (reserve[slot.idx], 1.0),
                    (x, -eta * battery.discharge_max),
                ],
                0.0,
            )?;
            // deliverable reserve is limited by the stored energy
            b.row_le(
                slot_name("rs_ba2", slot, &battery.id),
                &[
                    (reserve[slot.idx], 1.0),
                    (b.index.battery_storage[bi][slot.idx], -eta),
                ],
                0.0,
            )?;
        }
        b.index.battery_reserve[bi] = Some(reserve);
    }

    // market rows: member reserves plus the shortfall cover the requirement
    for (c, req) in system.reserve_requirements.iter().enumerate() {
        let profile = &b.view.scenarios.reserve[&req.id];
        let mut slack = Vec::with_capacity(b.slots.num_slots());
        for slot in b.slots.iter() {
            slack.push(b.cont(slot_name("dR", slot, &req.id), 0.0, f64::INFINITY)?);
        }
        let (thermal_members, hydro_members, battery_members) = b.sys.reserve_members[c].clone();
        for slot in b.slots.iter() {
            let mut terms: Vec<(gtep_milp::VarId, f64)> = Vec::new();
            for &j in &thermal_members {
                terms.push((b.index.thermal_reserve[j].as_ref().unwrap()[slot.idx], 1.0));
            }
            for &i in &hydro_members {
                terms.push((b.index.hydro_reserve[i].as_ref().unwrap()[slot.idx], 1.0));
            }
            for &bi in &battery_members {
                terms.push((b.index.battery_reserve[bi].as_ref().unwrap()[slot.idx], 1.0));
            }
            terms.push((slack[slot.idx], 1.0));
            b.row_ge(
                slot_name("rs_mkt", slot, &req.id),
                &terms,
                profile.get(slot.s, slot.t, slot.d, slot.h),
            )?;
        }
        b.index.reserve_slack.push(slack);
    }
    Ok(())
}
