//! Resolved cross-reference tables over a validated instance: dense entity
//! indices, bus membership lists, project coverage, reserve membership and
//! the reference-bus choice per connected circuit component.

use std::collections::BTreeMap;

use crate::catalog::{ProjectCatalog, TargetKind};
use crate::system::{LineKind, PowerSystem};

use super::FormError;

#[derive(Clone, Debug)]
pub(crate) struct SystemIndex {
    pub bus_idx: BTreeMap<String, usize>,
    pub thermals_at: Vec<Vec<usize>>,
    pub hydros_at: Vec<Vec<usize>>,
    pub renewables_at: Vec<Vec<usize>>,
    pub batteries_at: Vec<Vec<usize>>,
    /// Lines arriving at the bus (to_bus = n).
    pub lines_in: Vec<Vec<usize>>,
    /// Lines leaving the bus (from_bus = n).
    pub lines_out: Vec<Vec<usize>>,
    pub demand_at: Vec<Option<usize>>,

    pub thermal_project: Vec<usize>,
    pub hydro_project: Vec<usize>,
    pub renewable_project: Vec<usize>,
    pub battery_project: Vec<usize>,
    pub line_project: Vec<usize>,

    /// Upstream hydro indices per hydro.
    pub upstream: Vec<Vec<usize>>,

    pub thermal_in_reserve: Vec<bool>,
    pub hydro_in_reserve: Vec<bool>,
    pub battery_in_reserve: Vec<bool>,
    /// Per requirement: member (thermal, hydro, battery) indices.
    pub reserve_members: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)>,
    /// Per generation group: member (thermal, hydro) indices.
    pub group_members: Vec<(Vec<usize>, Vec<usize>)>,

    /// θ fixed to zero for these buses (one per circuit component).
    pub reference_bus: Vec<bool>,
    pub area_of_bus: Vec<Option<usize>>,
}

impl SystemIndex {
    pub fn build(system: &PowerSystem, catalog: &ProjectCatalog) -> Result<Self, FormError> {
        let nb = system.buses.len();
        let bus_idx: BTreeMap<String, usize> = system
            .buses
            .iter()
            .enumerate()
            .map(|(i, b)| (b.id.clone(), i))
            .collect();
        let bus_of = |id: &str| -> Result<usize, FormError> {
            bus_idx
                .get(id)
                .copied()
                .ok_or_else(|| FormError::UnknownReference(format!("bus {:?}", id)))
        };

        let mut thermals_at = vec![Vec::new(); nb];
        for (i, t) in system.thermals.iter().enumerate() {
            thermals_at[bus_of(&t.bus_id)?].push(i);
        }
        let mut hydros_at = vec![Vec::new(); nb];
        for (i, h) in system.hydros.iter().enumerate() {
            hydros_at[bus_of(&h.bus_id)?].push(i);
        }
        let mut renewables_at = vec![Vec::new(); nb];
        for (i, r) in system.renewables.iter().enumerate() {
            renewables_at[bus_of(&r.bus_id)?].push(i);
        }
        let mut batteries_at = vec![Vec::new(); nb];
        for (i, b) in system.batteries.iter().enumerate() {
            batteries_at[bus_of(&b.bus_id)?].push(i);
        }
        let mut lines_in = vec![Vec::new(); nb];
        let mut lines_out = vec![Vec::new(); nb];
        for (i, l) in system.lines.iter().enumerate() {
            lines_in[bus_of(&l.to_bus)?].push(i);
            lines_out[bus_of(&l.from_bus)?].push(i);
        }
        let mut demand_at = vec![None; nb];
        for (i, d) in system.demands.iter().enumerate() {
            demand_at[bus_of(&d.bus_id)?] = Some(i);
        }

        let project_for = |kind: TargetKind, id: &str| -> Result<usize, FormError> {
            catalog
                .projects
                .iter()
                .position(|p| p.target_kind == kind && p.target_id == id)
                .ok_or_else(|| FormError::UnknownReference(format!("project for {:?}", id)))
        };
        let thermal_project = system
            .thermals
            .iter()
            .map(|t| project_for(TargetKind::Thermal, &t.id))
            .collect::<Result<Vec<_>, _>>()?;
        let hydro_project = system
            .hydros
            .iter()
            .map(|h| project_for(TargetKind::Hydro, &h.id))
            .collect::<Result<Vec<_>, _>>()?;
        let renewable_project = system
            .renewables
            .iter()
            .map(|r| project_for(TargetKind::Renewable, &r.id))
            .collect::<Result<Vec<_>, _>>()?;
        let battery_project = system
            .batteries
            .iter()
            .map(|b| project_for(TargetKind::Battery, &b.id))
            .collect::<Result<Vec<_>, _>>()?;
        let line_project = system
            .lines
            .iter()
            .map(|l| project_for(TargetKind::Line, &l.id))
            .collect::<Result<Vec<_>, _>>()?;

        let hydro_idx: BTreeMap<&str, usize> = system
            .hydros
            .iter()
            .enumerate()
            .map(|(i, h)| (h.id.as_str(), i))
            .collect();
        let upstream = system
            .hydros
            .iter()
            .map(|h| {
                h.upstream_ids
                    .iter()
                    .map(|u| {
                        hydro_idx
                            .get(u.as_str())
                            .copied()
                            .ok_or_else(|| FormError::UnknownReference(format!("hydro {:?}", u)))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;

        let thermal_idx: BTreeMap<&str, usize> = system
            .thermals
            .iter()
            .enumerate()
            .map(|(i, t)| (t.id.as_str(), i))
            .collect();
        let battery_idx: BTreeMap<&str, usize> = system
            .batteries
            .iter()
            .enumerate()
            .map(|(i, b)| (b.id.as_str(), i))
            .collect();
        let mut thermal_in_reserve = vec![false; system.thermals.len()];
        let mut hydro_in_reserve = vec![false; system.hydros.len()];
        let mut battery_in_reserve = vec![false; system.batteries.len()];
        let mut reserve_members = Vec::with_capacity(system.reserve_requirements.len());
        let resolve = |map: &BTreeMap<&str, usize>, ids: &[String]| -> Result<Vec<usize>, FormError> {
            ids.iter()
                .map(|id| {
                    map.get(id.as_str())
                        .copied()
                        .ok_or_else(|| FormError::UnknownReference(format!("{:?}", id)))
                })
                .collect()
        };
        for rq in &system.reserve_requirements {
            let th = resolve(&thermal_idx, &rq.thermal_ids)?;
            let hy = resolve(&hydro_idx, &rq.hydro_ids)?;
            let ba = resolve(&battery_idx, &rq.battery_ids)?;
            for &i in &th {
                thermal_in_reserve[i] = true;
            }
            for &i in &hy {
                hydro_in_reserve[i] = true;
            }
            for &i in &ba {
                battery_in_reserve[i] = true;
            }
            reserve_members.push((th, hy, ba));
        }
        let mut group_members = Vec::with_capacity(system.generation_groups.len());
        for g in &system.generation_groups {
            group_members.push((
                resolve(&thermal_idx, &g.thermal_ids)?,
                resolve(&hydro_idx, &g.hydro_ids)?,
            ));
        }

        // connected components over circuit edges; the lexicographically
        // lowest bus id of each component becomes its angle reference
        let mut component = (0..nb).collect::<Vec<usize>>();
        fn find(component: &mut Vec<usize>, i: usize) -> usize {
            if component[i] != i {
                let root = find(component, component[i]);
                component[i] = root;
            }
            component[i]
        }
        for l in &system.lines {
            if l.kind == LineKind::Circuit {
                let a = find(&mut component, bus_of(&l.from_bus)?);
                let b = find(&mut component, bus_of(&l.to_bus)?);
                if a != b {
                    component[a.max(b)] = a.min(b);
                }
            }
        }
        let mut best_of_component: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..nb {
            let root = find(&mut component, i);
            let entry = best_of_component.entry(root).or_insert(i);
            if system.buses[i].id < system.buses[*entry].id {
                *entry = i;
            }
        }
        let mut reference_bus = vec![false; nb];
        for (_, &best) in &best_of_component {
            reference_bus[best] = true;
        }

        let area_idx: BTreeMap<&str, usize> = system
            .areas
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.as_str(), i))
            .collect();
        let area_of_bus = system
            .buses
            .iter()
            .map(|b| b.area_id.as_deref().and_then(|a| area_idx.get(a).copied()))
            .collect();

        Ok(Self {
            bus_idx,
            thermals_at,
            hydros_at,
            renewables_at,
            batteries_at,
            lines_in,
            lines_out,
            demand_at,
            thermal_project,
            hydro_project,
            renewable_project,
            battery_project,
            line_project,
            upstream,
            thermal_in_reserve,
            hydro_in_reserve,
            battery_in_reserve,
            reserve_members,
            group_members,
            reference_bus,
            area_of_bus,
        })
    }
}
