//! Thermal plants: generation bounds tied to commitment (or directly to
//! the investment when the plant has no commitment status), hourly ramps
//! with wrap-around inside each typical day, startup accounting and the
//! commitment/investment coupling.

use gtep_milp::Integrality;

use super::{slot_name, Builder, FormError};
use crate::time::HOURS_PER_DAY;

pub(super) fn emit_thermal(b: &mut Builder<'_>) -> Result<(), FormError> {
    let thermals = &b.view.instance.system.thermals;
    let n_slots = b.slots.num_slots();

    for (j, plant) in thermals.iter().enumerate() {
        let x = b.index.project_x[b.sys.thermal_project[j]];
        let committed = plant.has_commitment;

        let mut gen = Vec::with_capacity(n_slots);
        for slot in b.slots.iter() {
            gen.push(b.cont(slot_name("g_th", slot, &plant.id), 0.0, plant.g_max)?);
        }
        let commit = if committed {
            let mut v = Vec::with_capacity(n_slots);
            for slot in b.slots.iter() {
                v.push(b.model.add_variable(
                    &slot_name("gam", slot, &plant.id),
                    0.0,
                    1.0,
                    Integrality::Binary,
                )?);
            }
            Some(v)
        } else {
            None
        };
        // startup is continuous in [0,1]; with binary commitment and a
        // nonnegative startup cost it lands on 0/1 at optimality
        let startup = if committed {
            let mut v = Vec::with_capacity(n_slots);
            for slot in b.slots.iter() {
                v.push(b.cont(slot_name("st", slot, &plant.id), 0.0, 1.0)?);
            }
            Some(v)
        } else {
            None
        };

        for slot in b.slots.iter() {
            let g = gen[slot.idx];
            match &commit {
                Some(gam) => {
                    let c = gam[slot.idx];
                    b.row_ge(
                        slot_name("th_lo", slot, &plant.id),
                        &[(g, 1.0), (c, -plant.g_min)],
                        0.0,
                    )?;
                    b.row_le(
                        slot_name("th_hi", slot, &plant.id),
                        &[(g, 1.0), (c, -plant.g_max)],
                        0.0,
                    )?;
                    b.row_le(slot_name("th_cx", slot, &plant.id), &[(c, 1.0), (x, -1.0)], 0.0)?;
                }
                None => {
                    b.row_le(
                        slot_name("th_hi", slot, &plant.id),
                        &[(g, 1.0), (x, -plant.g_max)],
                        0.0,
                    )?;
                }
            }
        }

        // hour chaining wraps h = 1 back to h = 24 of the same typical day
        for slot in b.slots.iter() {
            let prev_h = (slot.h + HOURS_PER_DAY - 1) % HOURS_PER_DAY;
            let prev = b.slots.slot(slot.s, slot.t, slot.d, prev_h);
            b.row_le(
                slot_name("th_ru", slot, &plant.id),
                &[(gen[slot.idx], 1.0), (gen[prev], -1.0)],
                plant.ramp_up,
            )?;
            b.row_le(
                slot_name("th_rd", slot, &plant.id),
                &[(gen[prev], 1.0), (gen[slot.idx], -1.0)],
                plant.ramp_down,
            )?;
            if let (Some(gam), Some(st)) = (&commit, &startup) {
                b.row_ge(
                    slot_name("th_su", slot, &plant.id),
                    &[(st[slot.idx], 1.0), (gam[slot.idx], -1.0), (gam[prev], 1.0)],
                    0.0,
                )?;
            }
        }

        b.index.thermal_gen.push(gen);
        b.index.thermal_commit.push(commit);
        b.index.thermal_startup.push(startup);
        // reserve variables are emitted with the reserve rows
        b.index.thermal_reserve.push(None);
    }
    Ok(())
}
