//! Random planning instances and brute-force enumeration oracles.
//!
//! Instances are small by design (desk scale), always pass validation, and
//! are always feasible thanks to the deficit slack. Generation is fully
//! deterministic per seed.

use std::collections::BTreeMap;

use gtep_core::catalog::{DecisionKind, Project, ProjectCatalog, TargetKind};
use gtep_core::formulation::{build_yearly_model, YearView};
use gtep_core::instance::{EntryWindow, Instance, StudyHorizon};
use gtep_core::scenario::{HourlyProfile, ScenarioSet, SeasonalProfile};
use gtep_core::system::*;
use gtep_core::time::{Season, TimeStructure, HOURS_PER_DAY};
use gtep_solver::{SimplexSolver, SolveConfig, SolveStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shape knobs for the generator.
#[derive(Clone, Debug)]
pub struct GenOptions {
    pub buses: usize,
    pub thermals: usize,
    pub hydros: usize,
    pub renewables: usize,
    pub batteries: usize,
    pub lines: usize,
    pub scenarios: usize,
    pub typical_days: usize,
    pub seasons: usize,
    pub max_candidates: usize,
    pub with_reserve: bool,
    pub with_group: bool,
    pub with_investment_logic: bool,
    pub years: usize,
}

impl GenOptions {
    /// Small single-bus single-day instance; fast to solve.
    pub fn lean(candidates: usize) -> Self {
        Self {
            buses: 1,
            thermals: 2,
            hydros: 1,
            renewables: 1,
            batteries: 0,
            lines: 0,
            scenarios: 1,
            typical_days: 1,
            seasons: 1,
            max_candidates: candidates,
            with_reserve: false,
            with_group: false,
            with_investment_logic: false,
            years: 1,
        }
    }

    /// Two buses, a line, a battery, reserves; still desk scale.
    pub fn rich(candidates: usize) -> Self {
        Self {
            buses: 2,
            thermals: 2,
            hydros: 1,
            renewables: 1,
            batteries: 1,
            lines: 1,
            scenarios: 1,
            typical_days: 1,
            seasons: 1,
            max_candidates: candidates,
            with_reserve: true,
            with_group: true,
            with_investment_logic: true,
            years: 1,
        }
    }
}

fn hourly_profile(
    time: &TimeStructure,
    scenarios: usize,
    mut f: impl FnMut(usize, usize, usize, usize) -> f64,
) -> HourlyProfile {
    HourlyProfile {
        values: (0..scenarios)
            .map(|s| {
                time.seasons
                    .iter()
                    .enumerate()
                    .map(|(t, season)| {
                        (0..season.typical_day_weights.len())
                            .map(|d| (0..HOURS_PER_DAY).map(|h| f(s, t, d, h)).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    }
}

fn time_structure(seasons: usize, typical_days: usize) -> TimeStructure {
    let month_sets: Vec<Vec<u32>> = match seasons {
        1 => vec![(1..=12).collect()],
        _ => vec![(1..=6).collect(), (7..=12).collect()],
    };
    let season_days = |months: &[u32]| -> f64 {
        months
            .iter()
            .map(|&m| gtep_core::time::DAYS_IN_MONTH[m as usize - 1] as f64)
            .sum()
    };
    let seasons = month_sets
        .into_iter()
        .map(|months| {
            let total = season_days(&months);
            let weights = match typical_days {
                1 => vec![total],
                _ => {
                    let head = (total * 0.7).floor();
                    vec![head, total - head]
                }
            };
            Season {
                name: None,
                months,
                typical_day_weights: weights,
            }
        })
        .collect();
    TimeStructure {
        seasons,
        season_discount_rate: 0.0,
        day_assignment: None,
    }
}

/// Build a deterministic random instance. Candidates are binary; existing
/// assets are obligatory zero-cost projects.
pub fn random_instance(seed: u64, opts: &GenOptions) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let time = time_structure(opts.seasons, opts.typical_days);
    let nscen = opts.scenarios;
    let hours_per_year = 8760.0;

    let buses: Vec<Bus> = (0..opts.buses)
        .map(|i| Bus {
            id: format!("bus{}", i + 1),
            name: None,
            area_id: None,
        })
        .collect();

    let base_demand: Vec<f64> = (0..opts.buses)
        .map(|_| rng.gen_range(30.0..90.0))
        .collect();

    let mut thermals = Vec::new();
    for j in 0..opts.thermals {
        let g_max = rng.gen_range(30.0..110.0);
        let bus = format!("bus{}", rng.gen_range(0..opts.buses) + 1);
        thermals.push(ThermalPlant {
            id: format!("th{}", j + 1),
            bus_id: bus,
            g_min: 0.0,
            g_max,
            ramp_up: g_max * rng.gen_range(0.4..1.2),
            ramp_down: g_max * rng.gen_range(0.4..1.2),
            op_cost: rng.gen_range(8.0..60.0),
            startup_cost: 0.0,
            has_commitment: false,
        });
    }

    let total_base: f64 = base_demand.iter().sum();
    let mut hydros = Vec::new();
    for i in 0..opts.hydros {
        // size turbining so hydro can carry a meaningful demand share
        let rho = rng.gen_range(0.8..2.0);
        let share = rng.gen_range(0.1..0.4);
        let u_max = share * total_base * hours_per_year / (rho * opts.seasons as f64);
        let bus = format!("bus{}", rng.gen_range(0..opts.buses) + 1);
        hydros.push(HydroPlant {
            id: format!("hy{}", i + 1),
            bus_id: bus,
            v_min: 0.0,
            v_max: u_max * rng.gen_range(0.5..1.5),
            u_min: 0.0,
            u_max,
            q_min: 0.0,
            q_max: None,
            rho,
            g_max: total_base * rng.gen_range(0.3..0.8),
            upstream_ids: vec![],
            om_cost: rng.gen_range(0.5..4.0),
            penalty_storage: 5e4,
            penalty_turbining: 5e4,
            penalty_outflow: 5e4,
            initial_storage: None,
        });
    }
    if opts.hydros >= 2 {
        // chain the first two into a small cascade
        let first = hydros[0].id.clone();
        hydros[1].upstream_ids = vec![first];
    }

    let mut renewables = Vec::new();
    for l in 0..opts.renewables {
        let bus = format!("bus{}", rng.gen_range(0..opts.buses) + 1);
        renewables.push(RenewablePlant {
            id: format!("re{}", l + 1),
            bus_id: bus,
            capacity: rng.gen_range(20.0..70.0),
        });
    }

    let mut batteries = Vec::new();
    for bi in 0..opts.batteries {
        let power = rng.gen_range(8.0..30.0);
        let bus = format!("bus{}", rng.gen_range(0..opts.buses) + 1);
        batteries.push(Battery {
            id: format!("ba{}", bi + 1),
            bus_id: bus,
            v_max: power * rng.gen_range(2.0..5.0),
            charge_max: power,
            discharge_max: power,
            eta_charge: rng.gen_range(0.85..1.0),
            eta_discharge: rng.gen_range(0.85..1.0),
        });
    }

    let mut lines = Vec::new();
    if opts.buses >= 2 {
        for k in 0..opts.lines {
            let circuit = rng.gen_bool(0.7);
            lines.push(TransmissionLine {
                id: format!("ln{}", k + 1),
                from_bus: "bus1".into(),
                to_bus: "bus2".into(),
                kind: if circuit { LineKind::Circuit } else { LineKind::DcLink },
                f_max_fwd: rng.gen_range(20.0..80.0),
                f_max_bwd: rng.gen_range(20.0..80.0),
                susceptance: if circuit { Some(rng.gen_range(80.0..400.0)) } else { None },
            });
        }
    }

    // demand shape: two daily peaks, mild scenario spread
    let mut demand_specs = Vec::new();
    let mut inelastic = BTreeMap::new();
    for (n, bus) in buses.iter().enumerate() {
        let base = base_demand[n];
        let elastic = if rng.gen_bool(0.3) {
            vec![ElasticSegment {
                price: rng.gen_range(100.0..400.0),
                max_quantity: vec![rng.gen_range(2.0..10.0); HOURS_PER_DAY],
            }]
        } else {
            Vec::new()
        };
        demand_specs.push(DemandSpec {
            bus_id: bus.id.clone(),
            deficit_cost: rng.gen_range(2000.0..5000.0),
            elastic,
        });
        let phase = rng.gen_range(0.0..6.28);
        let spread: Vec<f64> = (0..nscen).map(|_| rng.gen_range(0.9..1.1)).collect();
        let day_bump: Vec<f64> = (0..4).map(|_| rng.gen_range(0.85..1.15)).collect();
        inelastic.insert(
            bus.id.clone(),
            hourly_profile(&time, nscen, |s, t, d, h| {
                let shape = 1.0
                    + 0.3 * ((h as f64 / 24.0 * 6.28 + phase).sin())
                    + 0.15 * ((h as f64 / 12.0 * 6.28).cos());
                base * shape * spread[s] * day_bump[(t * 2 + d) % 4]
            }),
        );
    }

    let mut scenario_set = ScenarioSet {
        probabilities: match nscen {
            1 => vec![1.0],
            n => {
                let mut p: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
                let total: f64 = p.iter().sum();
                for v in p.iter_mut() {
                    *v /= total;
                }
                p
            }
        },
        inelastic_demand: inelastic,
        ..ScenarioSet::default()
    };
    for h in &hydros {
        let u_max = h.u_max;
        let fills: Vec<f64> = (0..nscen).map(|_| rng.gen_range(0.3..1.1)).collect();
        scenario_set.inflow.insert(
            h.id.clone(),
            SeasonalProfile {
                values: (0..nscen)
                    .map(|s| (0..time.num_seasons()).map(|_| u_max * fills[s]).collect())
                    .collect(),
            },
        );
    }
    for r in &renewables {
        let cap = r.capacity;
        let windy: Vec<f64> = (0..nscen).map(|_| rng.gen_range(0.5..1.0)).collect();
        scenario_set.renewable_mw.insert(
            r.id.clone(),
            hourly_profile(&time, nscen, |s, _, _, h| {
                // daylight bell
                let x = (h as f64 - 12.0) / 5.0;
                cap * windy[s] * (-x * x).exp()
            }),
        );
    }

    let mut reserve_requirements = Vec::new();
    if opts.with_reserve && !thermals.is_empty() {
        let id = "resv1".to_string();
        reserve_requirements.push(ReserveRequirement {
            id: id.clone(),
            thermal_ids: thermals.iter().map(|t| t.id.clone()).collect(),
            hydro_ids: hydros.iter().map(|h| h.id.clone()).collect(),
            battery_ids: batteries.iter().map(|b| b.id.clone()).collect(),
            violation_penalty: rng.gen_range(300.0..1500.0),
        });
        let frac = rng.gen_range(0.05..0.15);
        scenario_set.reserve.insert(
            id,
            hourly_profile(&time, nscen, |_, _, _, _| total_base * frac),
        );
    }

    let mut generation_groups = Vec::new();
    if opts.with_group && thermals.len() >= 2 {
        generation_groups.push(GenerationGroupConstraint {
            id: "grp1".into(),
            thermal_ids: thermals.iter().take(2).map(|t| t.id.clone()).collect(),
            hydro_ids: vec![],
            bound_kind: if rng.gen_bool(0.5) { BoundKind::Min } else { BoundKind::Max },
            threshold: total_base * rng.gen_range(0.2..0.6),
            violation_penalty: rng.gen_range(200.0..800.0),
        });
    }

    let system = PowerSystem {
        buses,
        areas: vec![],
        thermals,
        hydros,
        renewables,
        batteries,
        lines,
        demands: demand_specs,
        generation_groups,
        reserve_requirements,
    };

    // every entity gets a project; a random subset becomes binary candidates
    let mut entities: Vec<(TargetKind, String, f64)> = Vec::new();
    for t in &system.thermals {
        entities.push((TargetKind::Thermal, t.id.clone(), t.g_max));
    }
    for h in &system.hydros {
        entities.push((TargetKind::Hydro, h.id.clone(), h.g_max));
    }
    for r in &system.renewables {
        entities.push((TargetKind::Renewable, r.id.clone(), r.capacity));
    }
    for b in &system.batteries {
        entities.push((TargetKind::Battery, b.id.clone(), b.discharge_max));
    }
    for l in &system.lines {
        entities.push((TargetKind::Line, l.id.clone(), l.f_max_fwd));
    }
    let mut candidate_slots: Vec<usize> = (0..entities.len()).collect();
    for i in (1..candidate_slots.len()).rev() {
        let j = rng.gen_range(0..=i);
        candidate_slots.swap(i, j);
    }
    candidate_slots.truncate(opts.max_candidates.min(entities.len()));

    let mut projects = Vec::new();
    for (idx, (kind, id, size)) in entities.iter().enumerate() {
        let candidate = candidate_slots.contains(&idx);
        projects.push(Project {
            id: format!("p_{}", id),
            target_kind: *kind,
            target_id: id.clone(),
            investment_cost: if candidate {
                size * hours_per_year * rng.gen_range(2.0..25.0)
            } else {
                0.0
            },
            decision: if candidate {
                DecisionKind::Binary
            } else {
                DecisionKind::Obligatory
            },
        });
    }

    let mut catalog = ProjectCatalog {
        projects,
        precedence: vec![],
        exclusivity: vec![],
        association: vec![],
        capacity_groups: vec![],
    };
    if opts.with_investment_logic && candidate_slots.len() >= 2 {
        let a = format!("p_{}", entities[candidate_slots[0]].1);
        let b = format!("p_{}", entities[candidate_slots[1]].1);
        if rng.gen_bool(0.5) {
            catalog.exclusivity.push(vec![a, b]);
        } else {
            catalog.precedence.push((a, b));
        }
    }

    let mut entry_windows = BTreeMap::new();
    if opts.years > 1 {
        for p in &catalog.projects {
            if p.decision == DecisionKind::Binary && rng.gen_bool(0.3) {
                entry_windows.insert(
                    p.id.clone(),
                    EntryWindow {
                        earliest: 2,
                        latest: None,
                    },
                );
            }
        }
    }
    let horizon = StudyHorizon {
        years: opts.years,
        annual_discount_rate: if opts.years > 1 { 0.08 } else { 0.0 },
        demand_growth: (0..opts.years)
            .map(|y| 1.0 + 0.2 * y as f64 + rng.gen_range(0.0..0.1))
            .collect(),
        entry_windows,
        scenario_overrides: BTreeMap::new(),
    };

    let instance = Instance {
        name: format!("rand{}", seed),
        system,
        catalog,
        time,
        scenarios: scenario_set,
        horizon,
    };
    let report = instance.validate();
    assert!(report.is_clean(), "generated instance invalid:\n{}", report);
    instance
}

/// Free binary candidates of a year given already-fixed decisions.
pub fn free_binary_candidates(instance: &Instance, fixed: &BTreeMap<String, f64>) -> Vec<String> {
    instance
        .catalog
        .projects
        .iter()
        .filter(|p| p.decision == DecisionKind::Binary && !fixed.contains_key(&p.id))
        .map(|p| p.id.clone())
        .collect()
}

/// Brute-force single-year optimum: every 0/1 vector over the free binary
/// candidates, each dispatched by LP. Returns the best objective and the
/// winning assignment; `None` when every vector is infeasible.
pub fn enumerate_single_year(
    instance: &Instance,
    year: usize,
    fixed: &BTreeMap<String, f64>,
    cfg: &SolveConfig<f64>,
) -> Option<(f64, BTreeMap<String, f64>)> {
    let view = YearView::for_year(instance, year, fixed.clone());
    let f = build_yearly_model(&view).expect("formulation");
    let free = free_binary_candidates(instance, fixed);
    let solver = SimplexSolver::new(&f.model, cfg.clone()).expect("template");
    let mut best: Option<(f64, BTreeMap<String, f64>)> = None;
    for mask in 0..(1u64 << free.len()) {
        let mut overrides = Vec::with_capacity(free.len());
        let mut assignment = fixed.clone();
        for (k, id) in free.iter().enumerate() {
            let v = ((mask >> k) & 1) as f64;
            let pi = instance.catalog.project_index(id).unwrap();
            overrides.push((f.index.project_x[pi], v, v));
            assignment.insert(id.clone(), v);
        }
        match solver.lp_with_bounds(&f.model, &overrides) {
            Ok(sol) if sol.status == SolveStatus::Optimal => {
                if best.as_ref().map_or(true, |(b, _)| sol.objective < *b) {
                    best = Some((sol.objective, assignment));
                }
            }
            Ok(_) => {}
            Err(e) => panic!("enumeration LP failed: {}", e),
        }
    }
    best
}

/// Exhaustive schedule enumeration for short horizons: each free binary
/// candidate picks a build year within its entry window (or never), every
/// schedule is priced by per-year LP dispatch, and the total is discounted
/// like the plan report. Obligatory projects follow their windows.
pub fn enumerate_schedules(instance: &Instance, cfg: &SolveConfig<f64>) -> Option<f64> {
    let years = instance.horizon.years;
    let free = free_binary_candidates(instance, &BTreeMap::new());
    let window_of = |id: &str| {
        instance
            .horizon
            .entry_windows
            .get(id)
            .copied()
            .unwrap_or_default()
    };
    // options per candidate: allowed build years, plus usize::MAX = never
    let options: Vec<Vec<usize>> = free
        .iter()
        .map(|id| {
            let w = window_of(id);
            let mut opts: Vec<usize> = (1..=years)
                .filter(|&y| y >= w.earliest && w.latest.map_or(true, |l| y <= l))
                .collect();
            opts.push(usize::MAX);
            opts
        })
        .collect();

    let mut counters = vec![0usize; free.len()];
    let mut best: Option<f64> = None;
    loop {
        let schedule: Vec<usize> = counters
            .iter()
            .zip(&options)
            .map(|(&c, opts)| opts[c])
            .collect();

        let mut total = 0.0;
        let mut feasible = true;
        for year in 1..=years {
            let mut fixed = BTreeMap::new();
            for (k, id) in free.iter().enumerate() {
                fixed.insert(id.clone(), if schedule[k] <= year { 1.0 } else { 0.0 });
            }
            for p in &instance.catalog.projects {
                if p.decision == DecisionKind::Obligatory {
                    let w = window_of(&p.id);
                    let open = year >= w.earliest && w.latest.map_or(true, |l| year <= l);
                    if !open {
                        fixed.insert(p.id.clone(), 0.0);
                    }
                }
            }
            let view = YearView::for_year(instance, year, fixed);
            let f = build_yearly_model(&view).expect("formulation");
            let solver = SimplexSolver::new(&f.model, cfg.clone()).expect("template");
            match solver.lp_with_bounds(&f.model, &[]) {
                Ok(sol) if sol.status == SolveStatus::Optimal => {
                    let discount =
                        (1.0 + instance.horizon.annual_discount_rate).powi(-(year as i32 - 1));
                    total += sol.objective * discount;
                }
                Ok(_) => {
                    feasible = false;
                    break;
                }
                Err(e) => panic!("schedule LP failed: {}", e),
            }
        }
        if feasible && best.map_or(true, |b| total < b) {
            best = Some(total);
        }

        // advance the mixed-radix counter
        let mut i = 0;
        loop {
            if i == counters.len() {
                return best;
            }
            counters[i] += 1;
            if counters[i] < options[i].len() {
                break;
            }
            counters[i] = 0;
            i += 1;
        }
    }
}
