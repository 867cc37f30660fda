//! Instance validation. Side-effect free and idempotent: the report is a
//! pure function of the inputs; an empty report means the instance is
//! well-formed.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::catalog::{DecisionKind, ProjectCatalog, TargetKind};
use crate::scenario::ScenarioSet;
use crate::system::{HydroPlant, LineKind, PowerSystem};
use crate::time::{TimeStructure, DAYS_IN_MONTH};

/// One violated invariant, naming the entity involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub code: &'static str,
    pub entity: String,
    pub message: String,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    fn add(&mut self, code: &'static str, entity: impl Into<String>, message: impl Into<String>) {
        self.findings.push(Finding {
            code,
            entity: entity.into(),
            message: message.into(),
        });
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for finding in &self.findings {
            writeln!(f, "[{}] {}: {}", finding.code, finding.entity, finding.message)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
#[error("hydro cascade cycle involving {0:?}")]
pub struct CycleError(pub Vec<String>);

/// Deterministic topological order of the hydro cascade: every plant
/// appears after all of its upstream plants. Ready candidates are taken in
/// id order, so the result is unique for a given input.
pub fn topological_order(hydros: &[HydroPlant]) -> Result<Vec<String>, CycleError> {
    let index: BTreeMap<&str, usize> = hydros
        .iter()
        .enumerate()
        .map(|(i, h)| (h.id.as_str(), i))
        .collect();
    let mut remaining_upstream: Vec<BTreeSet<&str>> = hydros
        .iter()
        .map(|h| {
            h.upstream_ids
                .iter()
                .filter(|u| index.contains_key(u.as_str()))
                .map(|u| u.as_str())
                .collect()
        })
        .collect();
    let mut ready: BTreeSet<&str> = hydros
        .iter()
        .enumerate()
        .filter(|(i, _)| remaining_upstream[*i].is_empty())
        .map(|(_, h)| h.id.as_str())
        .collect();
    let mut order = Vec::with_capacity(hydros.len());
    let mut done: BTreeSet<&str> = BTreeSet::new();
    while let Some(&next) = ready.iter().next() {
        ready.remove(next);
        done.insert(next);
        order.push(next.to_string());
        for (i, h) in hydros.iter().enumerate() {
            if !done.contains(h.id.as_str()) && remaining_upstream[i].remove(next) {
                if remaining_upstream[i].is_empty() {
                    ready.insert(h.id.as_str());
                }
            }
        }
    }
    if order.len() != hydros.len() {
        let stuck: Vec<String> = hydros
            .iter()
            .filter(|h| !done.contains(h.id.as_str()))
            .map(|h| h.id.clone())
            .collect();
        return Err(CycleError(stuck));
    }
    Ok(order)
}

/// Validate the full instance. The report collects every violation found;
/// nothing is fixed up silently.
pub fn validate_system(
    system: &PowerSystem,
    catalog: &ProjectCatalog,
    time: &TimeStructure,
    scenarios: &ScenarioSet,
) -> ValidationReport {
    let mut r = ValidationReport::default();
    let nscen = scenarios.num_scenarios();

    check_unique(&mut r, "bus", system.buses.iter().map(|b| b.id.as_str()));
    check_unique(&mut r, "area", system.areas.iter().map(|a| a.id.as_str()));
    check_unique(&mut r, "thermal", system.thermals.iter().map(|t| t.id.as_str()));
    check_unique(&mut r, "hydro", system.hydros.iter().map(|h| h.id.as_str()));
    check_unique(&mut r, "renewable", system.renewables.iter().map(|x| x.id.as_str()));
    check_unique(&mut r, "battery", system.batteries.iter().map(|b| b.id.as_str()));
    check_unique(&mut r, "line", system.lines.iter().map(|l| l.id.as_str()));
    check_unique(&mut r, "project", catalog.projects.iter().map(|p| p.id.as_str()));

    let bus_ids: BTreeSet<&str> = system.buses.iter().map(|b| b.id.as_str()).collect();
    let area_ids: BTreeSet<&str> = system.areas.iter().map(|a| a.id.as_str()).collect();

    for b in &system.buses {
        if let Some(area) = &b.area_id {
            if !area_ids.contains(area.as_str()) {
                r.add("unknown-area", &b.id, format!("references area {:?}", area));
            }
        }
    }
    for a in &system.areas {
        for (lo, hi, what) in [
            (a.import_min, a.import_max, "import"),
            (a.export_min, a.export_max, "export"),
        ] {
            if let (Some(lo), Some(hi)) = (lo, hi) {
                if lo > hi {
                    r.add("bound-order", &a.id, format!("{} min {} > max {}", what, lo, hi));
                }
            }
            for v in [lo, hi].into_iter().flatten() {
                if v < 0.0 {
                    r.add("negative-bound", &a.id, format!("{} bound {} < 0", what, v));
                }
            }
        }
    }

    for t in &system.thermals {
        if !bus_ids.contains(t.bus_id.as_str()) {
            r.add("unknown-bus", &t.id, format!("references bus {:?}", t.bus_id));
        }
        if !(0.0 <= t.g_min && t.g_min <= t.g_max) {
            r.add("bound-order", &t.id, format!("g_min {} / g_max {}", t.g_min, t.g_max));
        }
        if t.ramp_up < 0.0 || t.ramp_down < 0.0 {
            r.add("negative-ramp", &t.id, "ramps must be nonnegative");
        }
        if t.op_cost < 0.0 || t.startup_cost < 0.0 {
            r.add("negative-cost", &t.id, "costs must be nonnegative");
        }
    }

    let hydro_ids: BTreeSet<&str> = system.hydros.iter().map(|h| h.id.as_str()).collect();
    for h in &system.hydros {
        if !bus_ids.contains(h.bus_id.as_str()) {
            r.add("unknown-bus", &h.id, format!("references bus {:?}", h.bus_id));
        }
        if !(0.0 <= h.v_min && h.v_min <= h.v_max) {
            r.add("bound-order", &h.id, format!("v_min {} / v_max {}", h.v_min, h.v_max));
        }
        if !(0.0 <= h.u_min && h.u_min <= h.u_max) {
            r.add("bound-order", &h.id, format!("u_min {} / u_max {}", h.u_min, h.u_max));
        }
        if h.rho <= 0.0 {
            r.add("nonpositive-rho", &h.id, format!("rho {} must be > 0", h.rho));
        }
        if h.q_min < 0.0 {
            r.add("negative-bound", &h.id, "q_min must be nonnegative");
        }
        if let Some(q) = h.q_max {
            if q < h.q_min {
                r.add("bound-order", &h.id, format!("q_max {} < q_min {}", q, h.q_min));
            }
        }
        for u in &h.upstream_ids {
            if !hydro_ids.contains(u.as_str()) {
                r.add("unknown-hydro", &h.id, format!("upstream {:?} does not exist", u));
            }
        }
        if let Some(v0) = h.initial_storage {
            if v0 < 0.0 || v0 > h.v_max {
                r.add("bound-order", &h.id, format!("initial storage {} outside [0, v_max]", v0));
            }
        }
    }
    if let Err(cycle) = topological_order(&system.hydros) {
        r.add("hydro-cascade-cycle", cycle.0.join(","), "upstream graph has a cycle");
    }

    for x in &system.renewables {
        if !bus_ids.contains(x.bus_id.as_str()) {
            r.add("unknown-bus", &x.id, format!("references bus {:?}", x.bus_id));
        }
        if x.capacity <= 0.0 {
            r.add("nonpositive-capacity", &x.id, format!("capacity {}", x.capacity));
        }
    }
    for b in &system.batteries {
        if !bus_ids.contains(b.bus_id.as_str()) {
            r.add("unknown-bus", &b.id, format!("references bus {:?}", b.bus_id));
        }
        if b.v_max < 0.0 || b.charge_max < 0.0 || b.discharge_max < 0.0 {
            r.add("negative-bound", &b.id, "capacities must be nonnegative");
        }
        for (eta, what) in [(b.eta_charge, "charge"), (b.eta_discharge, "discharge")] {
            if !(eta > 0.0 && eta <= 1.0) {
                r.add("bad-efficiency", &b.id, format!("{} efficiency {} outside (0,1]", what, eta));
            }
        }
    }
    for l in &system.lines {
        if l.from_bus == l.to_bus {
            r.add("self-loop", &l.id, "from and to bus are identical");
        }
        for bus in [&l.from_bus, &l.to_bus] {
            if !bus_ids.contains(bus.as_str()) {
                r.add("unknown-bus", &l.id, format!("references bus {:?}", bus));
            }
        }
        if l.f_max_fwd < 0.0 || l.f_max_bwd < 0.0 {
            r.add("negative-bound", &l.id, "flow capacities must be nonnegative");
        }
        match (l.kind, l.susceptance) {
            (LineKind::Circuit, None) => {
                r.add("missing-susceptance", &l.id, "circuits need a susceptance")
            }
            (LineKind::Circuit, Some(g)) if g <= 0.0 => {
                r.add("missing-susceptance", &l.id, format!("susceptance {} must be > 0", g))
            }
            _ => {}
        }
    }

    let mut demand_buses: BTreeSet<&str> = BTreeSet::new();
    for d in &system.demands {
        if !bus_ids.contains(d.bus_id.as_str()) {
            r.add("unknown-bus", &d.bus_id, "demand references unknown bus");
        }
        if !demand_buses.insert(d.bus_id.as_str()) {
            r.add("duplicate-demand", &d.bus_id, "more than one demand spec for this bus");
        }
        let max_price = d.elastic.iter().map(|s| s.price).fold(f64::NEG_INFINITY, f64::max);
        if !d.elastic.is_empty() && d.deficit_cost <= max_price {
            r.add(
                "deficit-below-elastic",
                &d.bus_id,
                format!("deficit cost {} must exceed every elastic price (max {})", d.deficit_cost, max_price),
            );
        }
        for (i, seg) in d.elastic.iter().enumerate() {
            if seg.max_quantity.len() != crate::time::HOURS_PER_DAY {
                r.add(
                    "bad-segment",
                    format!("{}:{}", d.bus_id, i),
                    format!("max_quantity needs 24 entries, got {}", seg.max_quantity.len()),
                );
            }
            if seg.max_quantity.iter().any(|&q| q < 0.0) {
                r.add("bad-segment", format!("{}:{}", d.bus_id, i), "negative max_quantity");
            }
        }
        match scenarios.inelastic_demand.get(&d.bus_id) {
            None => r.add("missing-profile", &d.bus_id, "no inelastic demand profile"),
            Some(p) => {
                if !p.covers(time, nscen) {
                    r.add("profile-shape", &d.bus_id, "inelastic demand profile shape mismatch");
                } else if p.min_value() < 0.0 {
                    r.add("negative-profile", &d.bus_id, "inelastic demand must be nonnegative");
                }
            }
        }
    }

    let thermal_ids: BTreeSet<&str> = system.thermals.iter().map(|t| t.id.as_str()).collect();
    let battery_ids: BTreeSet<&str> = system.batteries.iter().map(|b| b.id.as_str()).collect();
    for g in &system.generation_groups {
        for id in &g.thermal_ids {
            if !thermal_ids.contains(id.as_str()) {
                r.add("unknown-thermal", &g.id, format!("member {:?} does not exist", id));
            }
        }
        for id in &g.hydro_ids {
            if !hydro_ids.contains(id.as_str()) {
                r.add("unknown-hydro", &g.id, format!("member {:?} does not exist", id));
            }
        }
        if g.threshold < 0.0 {
            r.add("negative-bound", &g.id, "threshold must be nonnegative");
        }
        if g.violation_penalty < 0.0 {
            r.add("negative-cost", &g.id, "violation penalty must be nonnegative");
        }
    }
    for q in &system.reserve_requirements {
        for id in &q.thermal_ids {
            if !thermal_ids.contains(id.as_str()) {
                r.add("unknown-thermal", &q.id, format!("member {:?} does not exist", id));
            }
        }
        for id in &q.hydro_ids {
            if !hydro_ids.contains(id.as_str()) {
                r.add("unknown-hydro", &q.id, format!("member {:?} does not exist", id));
            }
        }
        for id in &q.battery_ids {
            if !battery_ids.contains(id.as_str()) {
                r.add("unknown-battery", &q.id, format!("member {:?} does not exist", id));
            }
        }
        if q.violation_penalty < 0.0 {
            r.add("negative-cost", &q.id, "violation penalty must be nonnegative");
        }
        match scenarios.reserve.get(&q.id) {
            None => r.add("missing-profile", &q.id, "no reserve requirement profile"),
            Some(p) => {
                if !p.covers(time, nscen) {
                    r.add("profile-shape", &q.id, "reserve profile shape mismatch");
                } else if p.min_value() < 0.0 {
                    r.add("negative-profile", &q.id, "reserve requirement must be nonnegative");
                }
            }
        }
    }

    validate_catalog(&mut r, system, catalog);
    validate_time(&mut r, time);
    validate_scenarios(&mut r, system, time, scenarios);
    r
}

fn validate_catalog(r: &mut ValidationReport, system: &PowerSystem, catalog: &ProjectCatalog) {
    let project_ids: BTreeSet<&str> = catalog.projects.iter().map(|p| p.id.as_str()).collect();

    let exists = |kind: TargetKind, id: &str| -> bool {
        match kind {
            TargetKind::Thermal => system.thermals.iter().any(|x| x.id == id),
            TargetKind::Hydro => system.hydros.iter().any(|x| x.id == id),
            TargetKind::Renewable => system.renewables.iter().any(|x| x.id == id),
            TargetKind::Battery => system.batteries.iter().any(|x| x.id == id),
            TargetKind::Line => system.lines.iter().any(|x| x.id == id),
        }
    };
    for p in &catalog.projects {
        if !exists(p.target_kind, &p.target_id) {
            r.add("unknown-target", &p.id, format!("target {:?} does not exist", p.target_id));
        }
        if p.investment_cost < 0.0 {
            r.add("negative-cost", &p.id, "investment cost must be nonnegative");
        }
        if p.decision == DecisionKind::Continuous && p.target_kind == TargetKind::Thermal {
            if let Some(t) = system.thermals.iter().find(|t| t.id == p.target_id) {
                if t.has_commitment {
                    r.add(
                        "continuous-commitment",
                        &p.id,
                        "a continuous investment decision is incompatible with thermal commitment",
                    );
                }
            }
        }
    }

    // every entity must be covered by exactly one project
    let all_entities: Vec<(TargetKind, &str)> = system
        .thermals
        .iter()
        .map(|x| (TargetKind::Thermal, x.id.as_str()))
        .chain(system.hydros.iter().map(|x| (TargetKind::Hydro, x.id.as_str())))
        .chain(system.renewables.iter().map(|x| (TargetKind::Renewable, x.id.as_str())))
        .chain(system.batteries.iter().map(|x| (TargetKind::Battery, x.id.as_str())))
        .chain(system.lines.iter().map(|x| (TargetKind::Line, x.id.as_str())))
        .collect();
    for (kind, id) in all_entities {
        let n = catalog
            .projects
            .iter()
            .filter(|p| p.target_kind == kind && p.target_id == id)
            .count();
        if n == 0 {
            r.add("uncovered-entity", id, "entity has no project record (existing assets are obligatory projects)");
        } else if n > 1 {
            r.add("multi-covered-entity", id, format!("{} projects target this entity", n));
        }
    }

    for (i, (a, b)) in catalog.precedence.iter().enumerate() {
        for p in [a, b] {
            if !project_ids.contains(p.as_str()) {
                r.add("unknown-project", format!("precedence[{}]", i), format!("{:?}", p));
            }
        }
    }
    for (i, (a, b)) in catalog.association.iter().enumerate() {
        for p in [a, b] {
            if !project_ids.contains(p.as_str()) {
                r.add("unknown-project", format!("association[{}]", i), format!("{:?}", p));
            }
        }
    }
    for (i, set) in catalog.exclusivity.iter().enumerate() {
        if set.len() < 2 {
            r.add("small-exclusivity", format!("exclusivity[{}]", i), "needs at least 2 members");
        }
        for p in set {
            if !project_ids.contains(p.as_str()) {
                r.add("unknown-project", format!("exclusivity[{}]", i), format!("{:?}", p));
            }
        }
    }
    for g in &catalog.capacity_groups {
        for (p, _) in &g.weights {
            if !project_ids.contains(p.as_str()) {
                r.add("unknown-project", &g.id, format!("{:?}", p));
            }
        }
        if let (Some(lo), Some(hi)) = (g.lo, g.hi) {
            if lo > hi {
                r.add("bound-order", &g.id, format!("lo {} > hi {}", lo, hi));
            }
        }
        if g.lo.is_none() && g.hi.is_none() {
            r.add("empty-band", &g.id, "neither lo nor hi given");
        }
    }
}

fn validate_time(r: &mut ValidationReport, time: &TimeStructure) {
    let mut seen_months = [false; 12];
    for (t, season) in time.seasons.iter().enumerate() {
        let label = format!("season[{}]", t);
        for &m in &season.months {
            if !(1..=12).contains(&m) {
                r.add("bad-month", &label, format!("month {}", m));
            } else if seen_months[m as usize - 1] {
                r.add("month-reused", &label, format!("month {}", m));
            } else {
                seen_months[m as usize - 1] = true;
            }
        }
        if season.typical_day_weights.is_empty() {
            r.add("no-typical-days", &label, "season has no typical days");
        }
        for (d, &w) in season.typical_day_weights.iter().enumerate() {
            if w < 1.0 {
                r.add("small-weight", &label, format!("typical day {} weight {} < 1", d, w));
            }
        }
        let expected: f64 = season
            .months
            .iter()
            .filter(|&&m| (1..=12).contains(&m))
            .map(|&m| DAYS_IN_MONTH[m as usize - 1] as f64)
            .sum();
        let got: f64 = season.typical_day_weights.iter().sum();
        if (got - expected).abs() > 1e-9 {
            r.add(
                "weight-partition",
                &label,
                format!("weights sum to {} but the season's months hold {} days", got, expected),
            );
        }
    }
    if let Some(m) = seen_months.iter().position(|&s| !s) {
        r.add("unmapped-month", "time", format!("month {} in no season", m + 1));
    }
}

fn validate_scenarios(
    r: &mut ValidationReport,
    system: &PowerSystem,
    time: &TimeStructure,
    scenarios: &ScenarioSet,
) {
    let nscen = scenarios.num_scenarios();
    let total: f64 = scenarios.probabilities.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        r.add("probability-sum", "scenarios", format!("probabilities sum to {}", total));
    }
    if scenarios.probabilities.iter().any(|&p| p < 0.0) {
        r.add("negative-probability", "scenarios", "probabilities must be nonnegative");
    }
    for h in &system.hydros {
        match scenarios.inflow.get(&h.id) {
            None => r.add("missing-profile", &h.id, "no inflow profile"),
            Some(p) => {
                if !p.covers(time, nscen) {
                    r.add("profile-shape", &h.id, "inflow profile shape mismatch");
                } else if p.min_value() < 0.0 {
                    r.add("negative-profile", &h.id, "inflows must be nonnegative");
                }
            }
        }
    }
    for x in &system.renewables {
        match scenarios.renewable_mw.get(&x.id) {
            None => r.add("missing-profile", &x.id, "no renewable output profile"),
            Some(p) => {
                if !p.covers(time, nscen) {
                    r.add("profile-shape", &x.id, "renewable profile shape mismatch");
                } else if p.min_value() < 0.0 {
                    r.add("negative-profile", &x.id, "renewable output must be nonnegative");
                }
            }
        }
    }
}

fn check_unique<'a>(
    r: &mut ValidationReport,
    kind: &'static str,
    ids: impl Iterator<Item = &'a str>,
) {
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            r.add("duplicate-id", id, format!("duplicate {} id", kind));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::HydroPlant;

    fn hydro(id: &str, upstream: &[&str]) -> HydroPlant {
        HydroPlant {
            id: id.into(),
            bus_id: "b1".into(),
            v_min: 0.0,
            v_max: 100.0,
            u_min: 0.0,
            u_max: 100.0,
            q_min: 0.0,
            q_max: None,
            rho: 1.0,
            g_max: 10.0,
            upstream_ids: upstream.iter().map(|s| s.to_string()).collect(),
            om_cost: 0.0,
            penalty_storage: 1e6,
            penalty_turbining: 1e6,
            penalty_outflow: 1e6,
            initial_storage: None,
        }
    }

    #[test]
    fn chain_orders_upstream_first() {
        let hydros = vec![hydro("b", &["a"]), hydro("c", &["b"]), hydro("a", &[])];
        assert_eq!(topological_order(&hydros).unwrap(), vec!["a", "b", "c"]);
    }

    #[test]
    fn empty_system_orders_empty() {
        assert!(topological_order(&[]).unwrap().is_empty());
    }

    #[test]
    fn diamond_keeps_source_first_sink_last() {
        // a → b, a → c, b → d, c → d
        let hydros = vec![
            hydro("d", &["b", "c"]),
            hydro("b", &["a"]),
            hydro("c", &["a"]),
            hydro("a", &[]),
        ];
        let order = topological_order(&hydros).unwrap();
        assert_eq!(order.first().unwrap(), "a");
        assert_eq!(order.last().unwrap(), "d");
        assert_eq!(order.len(), 4);
    }

    #[test]
    fn two_cycle_detected() {
        let hydros = vec![hydro("a", &["b"]), hydro("b", &["a"])];
        assert!(topological_order(&hydros).is_err());
    }
}
