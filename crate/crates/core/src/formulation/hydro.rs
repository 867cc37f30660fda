//! Hydro plants: seasonal water balance along the cascade with cyclic
//! start = end storage, the regulation identity tying hourly generation to
//! seasonal turbined volume, and gated bounds with penalized slacks on the
//! minimum sides.

use super::{slot_name, sslot_name, Builder, FormError};

pub(super) fn emit_hydro(b: &mut Builder<'_>) -> Result<(), FormError> {
    let hydros = &b.view.instance.system.hydros;
    let seasons = b.slots.seasons;

    // all volume/turbine variables first so cascade rows can reference
    // upstream plants regardless of declaration order
    for (i, plant) in hydros.iter().enumerate() {
        let mut storage = Vec::with_capacity(b.slots.num_vslots());
        for s in 0..b.slots.scenarios {
            for t in 0..=seasons {
                storage.push(b.cont(
                    format!("v_hy[{},{},{}]", t, s + 1, plant.id),
                    0.0,
                    plant.v_max,
                )?);
            }
        }
        let mut turbine = Vec::with_capacity(b.slots.num_sslots());
        let mut spill = Vec::with_capacity(b.slots.num_sslots());
        let mut dv = Vec::with_capacity(b.slots.num_sslots());
        let mut du = Vec::with_capacity(b.slots.num_sslots());
        let mut dq = Vec::with_capacity(b.slots.num_sslots());
        for (s, t) in b.slots.iter_sslots() {
            turbine.push(b.cont(sslot_name("u_hy", t, s, &plant.id), 0.0, plant.u_max)?);
            spill.push(b.cont(sslot_name("sp_hy", t, s, &plant.id), 0.0, f64::INFINITY)?);
            dv.push(b.cont(sslot_name("dv", t, s, &plant.id), 0.0, f64::INFINITY)?);
            du.push(b.cont(sslot_name("du", t, s, &plant.id), 0.0, f64::INFINITY)?);
            dq.push(b.cont(sslot_name("dq", t, s, &plant.id), 0.0, f64::INFINITY)?);
        }
        let mut gen = Vec::with_capacity(b.slots.num_slots());
        for slot in b.slots.iter() {
            gen.push(b.cont(slot_name("g_hy", slot, &plant.id), 0.0, plant.g_max)?);
        }
        let _ = i;
        b.index.hydro_storage.push(storage);
        b.index.hydro_turbine.push(turbine);
        b.index.hydro_spill.push(spill);
        b.index.hydro_slack_storage.push(dv);
        b.index.hydro_slack_turbine.push(du);
        b.index.hydro_slack_outflow.push(dq);
        b.index.hydro_gen.push(gen);
        b.index.hydro_reserve.push(None);
    }

    for (i, plant) in hydros.iter().enumerate() {
        let x = b.index.project_x[b.sys.hydro_project[i]];
        let mut water_rows = Vec::with_capacity(b.slots.num_sslots());
        let mut cyc_rows = Vec::with_capacity(b.slots.scenarios);

        for s in 0..b.slots.scenarios {
            for t in 0..seasons {
                let ss = b.slots.sslot(s, t);
                let inflow = b.view.scenarios.inflow[&plant.id].get(s, t);
                // v_{t+1} − v_t + u_t + spill_t − Σ_up (u_m + spill_m) = a_t
                let mut terms = vec![
                    (b.index.hydro_storage[i][b.slots.vslot(s, t + 1)], 1.0),
                    (b.index.hydro_storage[i][b.slots.vslot(s, t)], -1.0),
                    (b.index.hydro_turbine[i][ss], 1.0),
                    (b.index.hydro_spill[i][ss], 1.0),
                ];
                for &m in &b.sys.upstream[i] {
                    terms.push((b.index.hydro_turbine[m][ss], -1.0));
                    terms.push((b.index.hydro_spill[m][ss], -1.0));
                }
                let row = b.row_eq(sslot_name("hy_bal", t, s, &plant.id), &terms, inflow)?;
                water_rows.push(row);
            }

            // cyclic identity: storage after the last season equals the
            // start-of-year storage
            let v_first = b.index.hydro_storage[i][b.slots.vslot(s, 0)];
            let v_last = b.index.hydro_storage[i][b.slots.vslot(s, seasons)];
            let cyc = b.row_eq(
                format!("hy_cyc[{},{}]", s + 1, plant.id),
                &[(v_last, 1.0), (v_first, -1.0)],
                0.0,
            )?;
            cyc_rows.push(cyc);

            // start-of-year storage is gated by the investment; its
            // minimum side follows from the cyclic tie to the last season
            b.row_le(
                format!("hy_v0hi[{},{}]", s + 1, plant.id),
                &[(v_first, 1.0), (x, -plant.v_max)],
                0.0,
            )?;
            if let Some(v0) = plant.initial_storage {
                b.row_eq(
                    format!("hy_v0fx[{},{}]", s + 1, plant.id),
                    &[(v_first, 1.0), (x, -v0)],
                    0.0,
                )?;
            }
        }

        for (s, t) in b.slots.iter_sslots() {
            let ss = b.slots.sslot(s, t);
            let v_end = b.index.hydro_storage[i][b.slots.vslot(s, t + 1)];
            let u = b.index.hydro_turbine[i][ss];
            let sp = b.index.hydro_spill[i][ss];
            b.row_le(
                sslot_name("hy_vhi", t, s, &plant.id),
                &[(v_end, 1.0), (x, -plant.v_max)],
                0.0,
            )?;
            b.row_ge(
                sslot_name("hy_vlo", t, s, &plant.id),
                &[
                    (v_end, 1.0),
                    (b.index.hydro_slack_storage[i][ss], 1.0),
                    (x, -plant.v_min),
                ],
                0.0,
            )?;
            b.row_le(
                sslot_name("hy_uhi", t, s, &plant.id),
                &[(u, 1.0), (x, -plant.u_max)],
                0.0,
            )?;
            b.row_ge(
                sslot_name("hy_ulo", t, s, &plant.id),
                &[
                    (u, 1.0),
                    (b.index.hydro_slack_turbine[i][ss], 1.0),
                    (x, -plant.u_min),
                ],
                0.0,
            )?;
            if let Some(q_max) = plant.q_max {
                b.row_le(
                    sslot_name("hy_qhi", t, s, &plant.id),
                    &[(u, 1.0), (sp, 1.0), (x, -q_max)],
                    0.0,
                )?;
            }
            b.row_ge(
                sslot_name("hy_qlo", t, s, &plant.id),
                &[
                    (u, 1.0),
                    (sp, 1.0),
                    (b.index.hydro_slack_outflow[i][ss], 1.0),
                    (x, -plant.q_min),
                ],
                0.0,
            )?;

            // regulation: typical-day energy weighted by day durations
            // equals the converted seasonal turbined volume
            let mut terms: Vec<(gtep_milp::VarId, f64)> = Vec::new();
            for d in 0..b.slots.days_per_season[t] {
                let weight = b.view.instance.time.weight(t, d);
                for h in 0..crate::time::HOURS_PER_DAY {
                    terms.push((b.index.hydro_gen[i][b.slots.slot(s, t, d, h)], weight));
                }
            }
            terms.push((u, -plant.rho));
            b.row_eq(sslot_name("hy_reg", t, s, &plant.id), &terms, 0.0)?;
        }

        for slot in b.slots.iter() {
            b.row_le(
                slot_name("hy_gx", slot, &plant.id),
                &[(b.index.hydro_gen[i][slot.idx], 1.0), (x, -plant.g_max)],
                0.0,
            )?;
        }

        b.index.water_balance_rows.push(water_rows);
        b.index.cyclic_rows.push(cyc_rows);
    }
    Ok(())
}
