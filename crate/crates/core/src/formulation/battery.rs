//! Batteries: hourly storage balance inside each typical day with the
//! end-of-day state identified with the start-of-day state, and capacity
//! bounds gated on the investment.

use super::{slot_name, Builder, FormError};
use crate::time::HOURS_PER_DAY;

pub(super) fn emit_batteries(b: &mut Builder<'_>) -> Result<(), FormError> {
    let batteries = &b.view.instance.system.batteries;
    for (bi, battery) in batteries.iter().enumerate() {
        let x = b.index.project_x[b.sys.battery_project[bi]];
        let mut storage = Vec::with_capacity(b.slots.num_slots());
        let mut charge = Vec::with_capacity(b.slots.num_slots());
        let mut discharge = Vec::with_capacity(b.slots.num_slots());
        for slot in b.slots.iter() {
            storage.push(b.cont(slot_name("v_ba", slot, &battery.id), 0.0, battery.v_max)?);
        }
        for slot in b.slots.iter() {
            charge.push(b.cont(slot_name("qc", slot, &battery.id), 0.0, battery.charge_max)?);
        }
        for slot in b.slots.iter() {
            discharge.push(b.cont(
                slot_name("qd", slot, &battery.id),
                0.0,
                battery.discharge_max,
            )?);
        }

        // v[h+1] = v[h] + η⁺ qc[h] − qd[h], with hour 24 wrapping onto
        // hour 1: summing the day's rows forces daily energy neutrality
        for (s, t, d) in b.slots.iter_days() {
            for h in 0..HOURS_PER_DAY {
                let here = b.slots.slot(s, t, d, h);
                let next = b.slots.slot(s, t, d, (h + 1) % HOURS_PER_DAY);
                let name = format!("ba_bal[{},{},{},{},{}]", t + 1, d + 1, h + 1, s + 1, battery.id);
                b.row_eq(
                    name,
                    &[
                        (storage[next], 1.0),
                        (storage[here], -1.0),
                        (charge[here], -battery.eta_charge),
                        (discharge[here], 1.0),
                    ],
                    0.0,
                )?;
            }
        }

        for slot in b.slots.iter() {
            b.row_le(
                slot_name("ba_vhi", slot, &battery.id),
                &[(storage[slot.idx], 1.0), (x, -battery.v_max)],
                0.0,
            )?;
            b.row_le(
                slot_name("ba_chi", slot, &battery.id),
                &[(charge[slot.idx], 1.0), (x, -battery.charge_max)],
                0.0,
            )?;
            b.row_le(
                slot_name("ba_dhi", slot, &battery.id),
                &[(discharge[slot.idx], 1.0), (x, -battery.discharge_max)],
                0.0,
            )?;
        }

        b.index.battery_storage.push(storage);
        b.index.battery_charge.push(charge);
        b.index.battery_discharge.push(discharge);
        b.index.battery_reserve.push(None);
    }
    Ok(())
}
