//! Nodal load balance: all generation at the bus, net battery exchange,
//! net arriving flows, elastic demand served and deficit slack equal the
//! inelastic demand in every hourly cell.

use super::{slot_name, Builder, FormError};

pub(super) fn emit_load_balance(b: &mut Builder<'_>) -> Result<(), FormError> {
    let system = &b.view.instance.system;
    let scale = b.view.demand_scale;

    // deficit and elastic-demand variables (demand buses only)
    for bus in &system.buses {
        let n = b.sys.bus_idx[&bus.id];
        match b.sys.demand_at[n] {
            None => {
                b.index.deficit.push(None);
                b.index.elastic.push(Vec::new());
            }
            Some(di) => {
                let demand = &system.demands[di];
                let profile = &b.view.scenarios.inelastic_demand[&demand.bus_id];
                let mut deficit = Vec::with_capacity(b.slots.num_slots());
                for slot in b.slots.iter() {
                    let cap = profile.get(slot.s, slot.t, slot.d, slot.h) * scale;
                    deficit.push(b.cont(slot_name("def", slot, &bus.id), 0.0, cap)?);
                }
                let mut segments = Vec::with_capacity(demand.elastic.len());
                for (si, seg) in demand.elastic.iter().enumerate() {
                    let mut vars = Vec::with_capacity(b.slots.num_slots());
                    for slot in b.slots.iter() {
                        let name = format!(
                            "de[{},{},{},{},{}:{}]",
                            slot.t + 1,
                            slot.d + 1,
                            slot.h + 1,
                            slot.s + 1,
                            bus.id,
                            si
                        );
                        vars.push(b.cont(name, 0.0, seg.max_quantity[slot.h])?);
                    }
                    segments.push(vars);
                }
                b.index.deficit.push(Some(deficit));
                b.index.elastic.push(segments);
            }
        }
    }

    for bus in &system.buses {
        let n = b.sys.bus_idx[&bus.id];
        let mut rows = Vec::with_capacity(b.slots.num_slots());
        for slot in b.slots.iter() {
            let mut terms: Vec<(gtep_milp::VarId, f64)> = Vec::new();
            for &j in &b.sys.thermals_at[n] {
                terms.push((b.index.thermal_gen[j][slot.idx], 1.0));
            }
            for &i in &b.sys.hydros_at[n] {
                terms.push((b.index.hydro_gen[i][slot.idx], 1.0));
            }
            for &l in &b.sys.renewables_at[n] {
                terms.push((b.index.renewable_gen[l][slot.idx], 1.0));
            }
            for &bi in &b.sys.batteries_at[n] {
                let eta = system.batteries[bi].eta_discharge;
                terms.push((b.index.battery_discharge[bi][slot.idx], eta));
                terms.push((b.index.battery_charge[bi][slot.idx], -1.0));
            }
            for &k in &b.sys.lines_in[n] {
                terms.push((b.index.flow_fwd[k][slot.idx], 1.0));
                terms.push((b.index.flow_bwd[k][slot.idx], -1.0));
            }
            for &k in &b.sys.lines_out[n] {
                terms.push((b.index.flow_fwd[k][slot.idx], -1.0));
                terms.push((b.index.flow_bwd[k][slot.idx], 1.0));
            }
            let mut rhs = 0.0;
            if let Some(di) = b.sys.demand_at[n] {
                let demand = &system.demands[di];
                let profile = &b.view.scenarios.inelastic_demand[&demand.bus_id];
                rhs = profile.get(slot.s, slot.t, slot.d, slot.h) * scale;
                for seg in &b.index.elastic[n] {
                    terms.push((seg[slot.idx], -1.0));
                }
                terms.push((b.index.deficit[n].as_ref().unwrap()[slot.idx], 1.0));
            }
            rows.push(b.row_eq(slot_name("bal", slot, &bus.id), &terms, rhs)?);
        }
        b.index.load_balance_rows.push(rows);
    }
    Ok(())
}
