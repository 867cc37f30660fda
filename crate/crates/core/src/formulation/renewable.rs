//! Renewables: generation capped by the scenario output gated on the
//! investment. Curtailment is the free slack between the cap and the
//! dispatched value.

use super::{slot_name, Builder, FormError};

pub(super) fn emit_renewables(b: &mut Builder<'_>) -> Result<(), FormError> {
    let renewables = &b.view.instance.system.renewables;
    for (l, plant) in renewables.iter().enumerate() {
        let x = b.index.project_x[b.sys.renewable_project[l]];
        let profile = &b.view.scenarios.renewable_mw[&plant.id];
        let mut gen = Vec::with_capacity(b.slots.num_slots());
        for slot in b.slots.iter() {
            let available = profile.get(slot.s, slot.t, slot.d, slot.h);
            gen.push(b.cont(slot_name("g_re", slot, &plant.id), 0.0, available)?);
        }
        for slot in b.slots.iter() {
            let available = profile.get(slot.s, slot.t, slot.d, slot.h);
            b.row_le(
                slot_name("re_cap", slot, &plant.id),
                &[(gen[slot.idx], 1.0), (x, -available)],
                0.0,
            )?;
        }
        b.index.renewable_gen.push(gen);
    }
    Ok(())
}
