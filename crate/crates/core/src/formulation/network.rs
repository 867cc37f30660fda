//! Transmission: directional flow variables gated on the line investment,
//! the disjunctive voltage-law pair for circuits (big-M chosen as the
//! smallest value that never cuts a feasible angle difference), one angle
//! reference per connected circuit component, and area import/export bands.

use std::collections::BTreeSet;

use crate::catalog::DecisionKind;
use crate::system::LineKind;

use super::{slot_name, Builder, FormError};

/// Angle box in radians; with `M = 2 γ θ̄` the disjunctive rows are exactly
/// slack-free at the angle extremes and never bind for unbuilt circuits.
pub const THETA_BOUND: f64 = std::f64::consts::FRAC_PI_2;

pub(super) fn emit_network(b: &mut Builder<'_>) -> Result<(), FormError> {
    let system = &b.view.instance.system;

    for bus in &system.buses {
        let n = b.sys.bus_idx[&bus.id];
        let reference = b.sys.reference_bus[n];
        let (lo, hi) = if reference {
            (0.0, 0.0)
        } else {
            (-THETA_BOUND, THETA_BOUND)
        };
        let mut theta = Vec::with_capacity(b.slots.num_slots());
        for slot in b.slots.iter() {
            theta.push(b.cont(slot_name("th", slot, &bus.id), lo, hi)?);
        }
        b.index.theta.push(theta);
    }

    for (k, line) in system.lines.iter().enumerate() {
        let x = b.index.project_x[b.sys.line_project[k]];
        let mut fwd = Vec::with_capacity(b.slots.num_slots());
        let mut bwd = Vec::with_capacity(b.slots.num_slots());
        for slot in b.slots.iter() {
            fwd.push(b.cont(slot_name("fp", slot, &line.id), 0.0, line.f_max_fwd)?);
        }
        for slot in b.slots.iter() {
            bwd.push(b.cont(slot_name("fn", slot, &line.id), 0.0, line.f_max_bwd)?);
        }
        for slot in b.slots.iter() {
            b.row_le(
                slot_name("fp_cap", slot, &line.id),
                &[(fwd[slot.idx], 1.0), (x, -line.f_max_fwd)],
                0.0,
            )?;
            b.row_le(
                slot_name("fn_cap", slot, &line.id),
                &[(bwd[slot.idx], 1.0), (x, -line.f_max_bwd)],
                0.0,
            )?;
        }

        let kvl = if line.kind == LineKind::Circuit {
            let gamma = line.susceptance.ok_or_else(|| {
                FormError::UnknownReference(format!("susceptance of circuit {:?}", line.id))
            })?;
            let big_m = 2.0 * gamma * THETA_BOUND;
            let from = b.sys.bus_idx[&line.from_bus];
            let to = b.sys.bus_idx[&line.to_bus];
            let mut rows = Vec::with_capacity(b.slots.num_slots());
            for slot in b.slots.iter() {
                let terms = [
                    (fwd[slot.idx], 1.0),
                    (bwd[slot.idx], -1.0),
                    (b.index.theta[from][slot.idx], -gamma),
                    (b.index.theta[to][slot.idx], gamma),
                ];
                let mut lo_terms = terms.to_vec();
                lo_terms.push((x, -big_m));
                let lo = b.row_ge(slot_name("kvl_lo", slot, &line.id), &lo_terms, -big_m)?;
                let mut hi_terms = terms.to_vec();
                hi_terms.push((x, big_m));
                let hi = b.row_le(slot_name("kvl_hi", slot, &line.id), &hi_terms, big_m)?;
                rows.push((lo, hi));
            }
            Some(rows)
        } else {
            None
        };

        b.index.flow_fwd.push(fwd);
        b.index.flow_bwd.push(bwd);
        b.index.kvl_rows.push(kvl);
    }

    emit_area_rows(b)?;
    warn_candidate_islands(b);
    Ok(())
}

fn emit_area_rows(b: &mut Builder<'_>) -> Result<(), FormError> {
    let system = &b.view.instance.system;
    for (ai, area) in system.areas.iter().enumerate() {
        let needs_import = area.import_min.is_some() || area.import_max.is_some();
        let needs_export = area.export_min.is_some() || area.export_max.is_some();
        if !needs_import && !needs_export {
            continue;
        }
        // arriving: to-bus inside, from-bus outside; leaving: the reverse
        let mut arriving = Vec::new();
        let mut leaving = Vec::new();
        for (k, line) in system.lines.iter().enumerate() {
            let from_in = b.sys.area_of_bus[b.sys.bus_idx[&line.from_bus]] == Some(ai);
            let to_in = b.sys.area_of_bus[b.sys.bus_idx[&line.to_bus]] == Some(ai);
            if to_in && !from_in {
                arriving.push(k);
            }
            if from_in && !to_in {
                leaving.push(k);
            }
        }
        for slot in b.slots.iter() {
            if needs_import {
                let mut terms = Vec::new();
                for &k in &arriving {
                    terms.push((b.index.flow_fwd[k][slot.idx], 1.0));
                }
                for &k in &leaving {
                    terms.push((b.index.flow_bwd[k][slot.idx], 1.0));
                }
                if let Some(hi) = area.import_max {
                    b.row_le(slot_name("imp_hi", slot, &area.id), &terms, hi)?;
                }
                if let Some(lo) = area.import_min {
                    b.row_ge(slot_name("imp_lo", slot, &area.id), &terms, lo)?;
                }
            }
            if needs_export {
                let mut terms = Vec::new();
                for &k in &leaving {
                    terms.push((b.index.flow_fwd[k][slot.idx], 1.0));
                }
                for &k in &arriving {
                    terms.push((b.index.flow_bwd[k][slot.idx], 1.0));
                }
                if let Some(hi) = area.export_max {
                    b.row_le(slot_name("exp_hi", slot, &area.id), &terms, hi)?;
                }
                if let Some(lo) = area.export_min {
                    b.row_ge(slot_name("exp_lo", slot, &area.id), &terms, lo)?;
                }
            }
        }
    }
    Ok(())
}

/// Buses reachable only through candidate lines are islanded whenever those
/// candidates stay unbuilt; worth a warning, not an error (deficit
/// variables keep the model feasible).
fn warn_candidate_islands(b: &mut Builder<'_>) {
    let system = &b.view.instance.system;
    let catalog = &b.view.instance.catalog;
    let nb = system.buses.len();
    if nb < 2 || system.lines.is_empty() {
        return;
    }
    let mut all = Components::new(nb);
    let mut existing = Components::new(nb);
    for (k, line) in system.lines.iter().enumerate() {
        let from = b.sys.bus_idx[&line.from_bus];
        let to = b.sys.bus_idx[&line.to_bus];
        all.join(from, to);
        let project = &catalog.projects[b.sys.line_project[k]];
        let fixed_on = b.view.fixed.get(&project.id).map(|&v| v >= 0.5);
        let is_existing = match fixed_on {
            Some(on) => on,
            None => project.decision == DecisionKind::Obligatory,
        };
        if is_existing {
            existing.join(from, to);
        }
    }
    let mut flagged: BTreeSet<String> = BTreeSet::new();
    for i in 0..nb {
        for j in (i + 1)..nb {
            if all.same(i, j) && !existing.same(i, j) {
                flagged.insert(system.buses[i].id.clone());
                flagged.insert(system.buses[j].id.clone());
            }
        }
    }
    if !flagged.is_empty() {
        b.warnings.push(format!(
            "buses {} are bridged only by candidate lines and island if those stay unbuilt",
            flagged.into_iter().collect::<Vec<_>>().join(", ")
        ));
    }
}

struct Components {
    parent: Vec<usize>,
}

impl Components {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}
