//! Generation-group bands: a set of thermal and hydro plants kept above or
//! below a MW threshold every hour, with a penalized slack that always
//! relaxes the bound (added on min rows, subtracted on max rows).

use crate::system::BoundKind;

use super::{slot_name, Builder, FormError};

pub(super) fn emit_generation_groups(b: &mut Builder<'_>) -> Result<(), FormError> {
    let groups = &b.view.instance.system.generation_groups;
    for (c, group) in groups.iter().enumerate() {
        let mut slack = Vec::with_capacity(b.slots.num_slots());
        for slot in b.slots.iter() {
            slack.push(b.cont(slot_name("dG", slot, &group.id), 0.0, f64::INFINITY)?);
        }
        let (thermal_members, hydro_members) = b.sys.group_members[c].clone();
        for slot in b.slots.iter() {
            let mut terms: Vec<(gtep_milp::VarId, f64)> = Vec::new();
            for &j in &thermal_members {
                terms.push((b.index.thermal_gen[j][slot.idx], 1.0));
            }
            for &i in &hydro_members {
                terms.push((b.index.hydro_gen[i][slot.idx], 1.0));
            }
            match group.bound_kind {
                BoundKind::Min => {
                    terms.push((slack[slot.idx], 1.0));
                    b.row_ge(slot_name("gg_lo", slot, &group.id), &terms, group.threshold)?;
                }
                BoundKind::Max => {
                    terms.push((slack[slot.idx], -1.0));
                    b.row_le(slot_name("gg_hi", slot, &group.id), &terms, group.threshold)?;
                }
            }
        }
        b.index.group_slack.push(slack);
    }
    Ok(())
}
