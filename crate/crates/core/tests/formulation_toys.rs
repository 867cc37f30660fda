//! Formulation behavior on hand-solvable toys: each test pins the expected
//! optimum or dispatch worked out independently (mass balances, DC flow
//! splits, arithmetic on the toy LP).

mod common;

use common::*;
use gtep_core::catalog::TargetKind;
use gtep_core::formulation::{build_yearly_model, verify, YearView};
use gtep_core::report::compute_costs;
use gtep_core::system::{BoundKind, GenerationGroupConstraint, ReserveRequirement};
use gtep_core::time::HOURS_PER_DAY;
use gtep_solver::{solve_lp, solve_mip, SolveConfig, SolveStatus};

fn cfg() -> SolveConfig<f64> {
    SolveConfig::tight()
}

#[test]
fn island_bus_runs_full_deficit() {
    let mut inst = base_instance("island");
    inst.system.buses.push(bus("b1"));
    inst.system.demands.push(demand("b1", 1000.0));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 10.0));
    assert_valid(&inst);
    let f = build_yearly_model(&YearView::single_year(&inst)).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    assert_eq!(sol.status, SolveStatus::Optimal);
    // every hour short by 10 MW, weighted by 365 days
    let expected = 1000.0 * 10.0 * 365.0 * 24.0;
    assert!((sol.objective - expected).abs() <= 1e-9 * expected);
    let check = verify::verify_solution(&YearView::single_year(&inst), &f, &sol);
    assert!(check.within(1e-6), "{:?}", check);
}

#[test]
fn cheap_thermal_clears_demand() {
    let mut inst = base_instance("thermal");
    inst.system.buses.push(bus("b1"));
    inst.system.thermals.push(thermal("t1", "b1", 50.0, 12.0));
    inst.system.demands.push(demand("b1", 1000.0));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t1"));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 30.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    let expected = 12.0 * 30.0 * 365.0 * 24.0;
    assert!((sol.objective - expected).abs() <= 1e-9 * expected);
    // no deficit
    let costs = compute_costs(&view, &f, &sol);
    assert!(costs.deficit.abs() < 1e-9);
    assert!((costs.total - sol.objective).abs() <= 1e-6 * (1.0 + sol.objective.abs()));
}

#[test]
fn renewable_covers_demand_and_curtails() {
    // 50 MW available, 30 MW demanded, no storage → 30 dispatched
    let mut inst = base_instance("curtail");
    inst.system.buses.push(bus("b1"));
    inst.system.renewables.push(gtep_core::system::RenewablePlant {
        id: "r1".into(),
        bus_id: "b1".into(),
        capacity: 50.0,
    });
    inst.system.demands.push(demand("b1", 1000.0));
    inst.catalog.projects.push(existing(TargetKind::Renewable, "r1"));
    inst.scenarios
        .renewable_mw
        .insert("r1".into(), flat(&inst, 50.0));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 30.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    assert!(sol.objective.abs() < 1e-9);
    for slot_var in &f.index.renewable_gen[0] {
        let g = sol.primal[slot_var.index()];
        assert!((g - 30.0).abs() < 1e-6, "dispatch {}", g);
    }
}

#[test]
fn renewable_output_zero_when_unbuilt_or_dark() {
    let mut inst = base_instance("gate");
    inst.system.buses.push(bus("b1"));
    inst.system.renewables.push(gtep_core::system::RenewablePlant {
        id: "r1".into(),
        bus_id: "b1".into(),
        capacity: 50.0,
    });
    inst.system.demands.push(demand("b1", 1000.0));
    inst.catalog
        .projects
        .push(candidate(TargetKind::Renewable, "r1", 1e9));
    let mut day = [50.0; HOURS_PER_DAY];
    for h in 0..6 {
        day[h] = 0.0; // dark hours force zero output even when built
    }
    inst.scenarios.renewable_mw.insert("r1".into(), hourly(&inst, day));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 30.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    // the build cost dwarfs the deficit, so the candidate stays out
    let sol = solve_mip(&f.model, &cfg()).unwrap();
    let x = sol.primal[f.index.project_x[0].index()];
    assert!(x < 1e-9);
    for v in &f.index.renewable_gen[0] {
        assert!(sol.primal[v.index()].abs() < 1e-9);
    }
    let check = verify::verify_solution(&view, &f, &sol);
    assert!(check.gating <= 1e-6, "{:?}", check);
}

#[test]
fn two_bus_line_limit_forces_remote_deficit() {
    // all generation at b1, 8 MW demanded at b2, line cap 5 → deficit 3
    let mut inst = base_instance("twobus");
    inst.system.buses.push(bus("b1"));
    inst.system.buses.push(bus("b2"));
    inst.system.thermals.push(thermal("t1", "b1", 100.0, 10.0));
    inst.system.lines.push(circuit("l12", "b1", "b2", 5.0, 4.0));
    inst.system.demands.push(demand("b2", 2000.0));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t1"));
    inst.catalog.projects.push(existing(TargetKind::Line, "l12"));
    inst.scenarios
        .inelastic_demand
        .insert("b2".into(), flat(&inst, 8.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    let b2 = 1;
    for v in f.index.deficit[b2].as_ref().unwrap() {
        assert!((sol.primal[v.index()] - 3.0).abs() < 1e-6);
    }
    let check = verify::verify_solution(&view, &f, &sol);
    assert!(check.within(1e-6), "{:?}", check);
}

#[test]
fn triangle_injection_splits_two_to_one() {
    // equal susceptances, 90 MW from b1 to b3: 60 direct, 30 around
    let mut inst = base_instance("triangle");
    for id in ["b1", "b2", "b3"] {
        inst.system.buses.push(bus(id));
    }
    inst.system.thermals.push(thermal("t1", "b1", 90.0, 10.0));
    inst.system.lines.push(circuit("l12", "b1", "b2", 200.0, 100.0));
    inst.system.lines.push(circuit("l23", "b2", "b3", 200.0, 100.0));
    inst.system.lines.push(circuit("l13", "b1", "b3", 200.0, 100.0));
    inst.system.demands.push(demand("b3", 2000.0));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t1"));
    for id in ["l12", "l23", "l13"] {
        inst.catalog.projects.push(existing(TargetKind::Line, id));
    }
    inst.scenarios
        .inelastic_demand
        .insert("b3".into(), flat(&inst, 90.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    assert_eq!(sol.status, SolveStatus::Optimal);
    let net = |k: usize, idx: usize| {
        sol.primal[f.index.flow_fwd[k][idx].index()] - sol.primal[f.index.flow_bwd[k][idx].index()]
    };
    for slot in 0..(HOURS_PER_DAY) {
        assert!((net(0, slot) - 30.0).abs() < 1e-6, "l12 {}", net(0, slot));
        assert!((net(1, slot) - 30.0).abs() < 1e-6, "l23 {}", net(1, slot));
        assert!((net(2, slot) - 60.0).abs() < 1e-6, "l13 {}", net(2, slot));
    }
    let check = verify::verify_solution(&view, &f, &sol);
    assert!(check.kvl_built <= 1e-6, "{:?}", check);
}

#[test]
fn hydro_uses_exactly_the_inflow_energy() {
    // 100 hm³ over the year at ρ = 1 MWh/hm³ → 100 MWh of hydro energy
    let mut inst = base_instance("hydro");
    inst.system.buses.push(bus("b1"));
    inst.system.hydros.push(hydro("h1", "b1", 50.0, 1000.0, 1.0));
    inst.system.thermals.push(thermal("t1", "b1", 100.0, 50.0));
    inst.system.demands.push(demand("b1", 3000.0));
    inst.catalog.projects.push(existing(TargetKind::Hydro, "h1"));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t1"));
    inst.scenarios.inflow.insert("h1".into(), seasonal(&inst, 100.0));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 40.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    // weighted hydro energy equals the turbined volume times rho
    let mut energy = 0.0;
    for (hslot, v) in f.index.hydro_gen[0].iter().enumerate() {
        let _ = hslot;
        energy += 365.0 * sol.primal[v.index()];
    }
    assert!((energy - 100.0).abs() < 1e-6, "energy {}", energy);
    let turbined = sol.primal[f.index.hydro_turbine[0][0].index()];
    assert!((turbined - 100.0).abs() < 1e-6);
    let spilled = sol.primal[f.index.hydro_spill[0][0].index()];
    assert!(spilled.abs() < 1e-6);
    let check = verify::verify_solution(&view, &f, &sol);
    assert!(check.within(1e-6), "{:?}", check);
}

#[test]
fn hydro_zero_inflow_cyclic_releases_nothing() {
    let mut inst = base_instance("dryhydro");
    inst.system.buses.push(bus("b1"));
    inst.system.hydros.push(hydro("h1", "b1", 50.0, 1000.0, 1.0));
    inst.system.demands.push(demand("b1", 1000.0));
    inst.catalog.projects.push(existing(TargetKind::Hydro, "h1"));
    inst.scenarios.inflow.insert("h1".into(), seasonal(&inst, 0.0));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 5.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    // cyclic storage and zero inflow: nothing can be turbined or spilled
    let turbined = sol.primal[f.index.hydro_turbine[0][0].index()];
    let spilled = sol.primal[f.index.hydro_spill[0][0].index()];
    assert!(turbined.abs() < 1e-6);
    assert!(spilled.abs() < 1e-6);
}

#[test]
fn cascade_release_arrives_downstream() {
    // upstream inflow only; downstream can still generate from releases
    let mut inst = base_instance("cascade");
    inst.system.buses.push(bus("b1"));
    inst.system.hydros.push(hydro("up", "b1", 50.0, 1000.0, 1.0));
    let mut down = hydro("down", "b1", 50.0, 1000.0, 2.0);
    down.upstream_ids = vec!["up".into()];
    inst.system.hydros.push(down);
    inst.system.demands.push(demand("b1", 3000.0));
    inst.catalog.projects.push(existing(TargetKind::Hydro, "up"));
    inst.catalog.projects.push(existing(TargetKind::Hydro, "down"));
    inst.scenarios.inflow.insert("up".into(), seasonal(&inst, 100.0));
    inst.scenarios.inflow.insert("down".into(), seasonal(&inst, 0.0));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 40.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    // everything released upstream shows up downstream: 100 hm³ at ρ=2
    let down_turbined = sol.primal[f.index.hydro_turbine[1][0].index()];
    assert!((down_turbined - 100.0).abs() < 1e-6, "{}", down_turbined);
    let check = verify::verify_solution(&view, &f, &sol);
    assert!(check.water_balance <= 1e-6 && check.hydro_cycle <= 1e-6, "{:?}", check);
}

#[test]
fn battery_shifts_energy_into_peak() {
    // cheap unit covers 60 MW; peak hours need 80; a lossless battery
    // charges off-peak and displaces the expensive unit entirely
    let mut inst = base_instance("arbitrage");
    inst.system.buses.push(bus("b1"));
    inst.system.thermals.push(thermal("cheap", "b1", 60.0, 5.0));
    inst.system.thermals.push(thermal("dear", "b1", 40.0, 100.0));
    inst.system.batteries.push(battery("s1", "b1", 20.0, 200.0, 1.0));
    inst.system.demands.push(demand("b1", 2000.0));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "cheap"));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "dear"));
    inst.catalog.projects.push(existing(TargetKind::Battery, "s1"));
    let mut day = [40.0; HOURS_PER_DAY];
    for h in 17..23 {
        day[h] = 80.0;
    }
    inst.scenarios.inelastic_demand.insert("b1".into(), hourly(&inst, day));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    let dear_total: f64 = f.index.thermal_gen[1]
        .iter()
        .map(|v| sol.primal[v.index()])
        .sum();
    assert!(dear_total.abs() < 1e-6, "expensive ran {}", dear_total);
    let peak_discharge: f64 = (17..23)
        .map(|h| sol.primal[f.index.battery_discharge[0][h].index()])
        .sum();
    assert!((peak_discharge - 120.0).abs() < 1e-6, "{}", peak_discharge);
    // daily neutrality
    let check = verify::verify_solution(&view, &f, &sol);
    assert!(check.battery_cycle <= 1e-6, "{:?}", check);
}

#[test]
fn reserve_shortfall_when_ramp_limits_bind() {
    // requirement 20 MW, single thermal capped at 15 MW/h of headroom
    let mut inst = base_instance("reserve");
    inst.system.buses.push(bus("b1"));
    let mut t = thermal("t1", "b1", 100.0, 10.0);
    t.ramp_up = 15.0;
    t.ramp_down = 100.0;
    inst.system.thermals.push(t);
    inst.system.reserve_requirements.push(ReserveRequirement {
        id: "rq".into(),
        thermal_ids: vec!["t1".into()],
        hydro_ids: vec![],
        battery_ids: vec![],
        violation_penalty: 500.0,
    });
    inst.system.demands.push(demand("b1", 2000.0));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t1"));
    inst.scenarios.reserve.insert("rq".into(), flat(&inst, 20.0));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 30.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    // reserve is capped by the ramp bound, so 5 MW is always short
    for v in &f.index.reserve_slack[0] {
        assert!((sol.primal[v.index()] - 5.0).abs() < 1e-6);
    }
    for v in f.index.thermal_reserve[0].as_ref().unwrap() {
        assert!((sol.primal[v.index()] - 15.0).abs() < 1e-6);
    }
}

#[test]
fn reserve_zero_requirement_costs_nothing() {
    let mut inst = base_instance("reserve0");
    inst.system.buses.push(bus("b1"));
    inst.system.thermals.push(thermal("t1", "b1", 100.0, 10.0));
    inst.system.reserve_requirements.push(ReserveRequirement {
        id: "rq".into(),
        thermal_ids: vec!["t1".into()],
        hydro_ids: vec![],
        battery_ids: vec![],
        violation_penalty: 500.0,
    });
    inst.system.demands.push(demand("b1", 2000.0));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t1"));
    inst.scenarios.reserve.insert("rq".into(), flat(&inst, 0.0));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 30.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    let expected = 10.0 * 30.0 * 365.0 * 24.0;
    assert!((sol.objective - expected).abs() <= 1e-9 * expected);
}

#[test]
fn fully_dispatched_committed_plant_has_no_headroom() {
    let mut inst = base_instance("headroom");
    inst.system.buses.push(bus("b1"));
    let mut t = thermal("t1", "b1", 100.0, 10.0);
    t.has_commitment = true;
    inst.system.thermals.push(t);
    inst.system.reserve_requirements.push(ReserveRequirement {
        id: "rq".into(),
        thermal_ids: vec!["t1".into()],
        hydro_ids: vec![],
        battery_ids: vec![],
        violation_penalty: 50.0,
    });
    inst.system.demands.push(demand("b1", 2000.0));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t1"));
    inst.scenarios.reserve.insert("rq".into(), flat(&inst, 20.0));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 100.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_mip(&f.model, &cfg()).unwrap();
    // demand forces g = 100 = capacity; reserve must be zero, shortfall 20
    for v in f.index.thermal_reserve[0].as_ref().unwrap() {
        assert!(sol.primal[v.index()].abs() < 1e-6);
    }
    for v in &f.index.reserve_slack[0] {
        assert!((sol.primal[v.index()] - 20.0).abs() < 1e-6);
    }
}

#[test]
fn generation_group_minimum_forces_slack() {
    // 50 MW floor on a 30 MW plant: 20 MW of slack every hour
    let mut inst = base_instance("group");
    inst.system.buses.push(bus("b1"));
    inst.system.thermals.push(thermal("t1", "b1", 30.0, 10.0));
    inst.system.generation_groups.push(GenerationGroupConstraint {
        id: "g".into(),
        thermal_ids: vec!["t1".into()],
        hydro_ids: vec![],
        bound_kind: BoundKind::Min,
        threshold: 50.0,
        violation_penalty: 100.0,
    });
    inst.system.demands.push(demand("b1", 2000.0));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t1"));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 30.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    for v in &f.index.group_slack[0] {
        assert!((sol.primal[v.index()] - 20.0).abs() < 1e-6);
    }
}

#[test]
fn generation_group_maximum_binds_with_positive_dual() {
    // two cheap plants, 60 MW of load, 40 MW group cap → cap binds
    let mut inst = base_instance("groupmax");
    inst.system.buses.push(bus("b1"));
    inst.system.thermals.push(thermal("t1", "b1", 50.0, 10.0));
    inst.system.thermals.push(thermal("t2", "b1", 50.0, 12.0));
    inst.system.thermals.push(thermal("ref", "b1", 100.0, 80.0));
    inst.system.generation_groups.push(GenerationGroupConstraint {
        id: "g".into(),
        thermal_ids: vec!["t1".into(), "t2".into()],
        hydro_ids: vec![],
        bound_kind: BoundKind::Max,
        threshold: 40.0,
        violation_penalty: 1e6,
    });
    inst.system.demands.push(demand("b1", 2000.0));
    for id in ["t1", "t2", "ref"] {
        inst.catalog.projects.push(existing(TargetKind::Thermal, id));
    }
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 60.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    // group at its cap, remainder from the reference unit
    let g1 = sol.primal[f.index.thermal_gen[0][0].index()];
    let g2 = sol.primal[f.index.thermal_gen[1][0].index()];
    assert!((g1 + g2 - 40.0).abs() < 1e-6);
    // relaxing the cap would save money: row dual is negative for a ≤ row
    // in a minimization, meaning ∂cost/∂threshold < 0
    let row = f.model.row_id("gg_hi[1,1,1,1,g]").unwrap();
    assert!(sol.duals[row.index()] < -1e-9, "dual {}", sol.duals[row.index()]);
}

#[test]
fn committed_ramp_limits_hourly_rise() {
    // demand jumps 0 → 50 at hour 2; with 10 MW/h of ramp the unit
    // reaches only 10, the rest is deficit
    let mut inst = base_instance("ramp");
    inst.system.buses.push(bus("b1"));
    let mut t = thermal("t1", "b1", 60.0, 10.0);
    t.has_commitment = true;
    t.ramp_up = 10.0;
    t.ramp_down = 10.0;
    inst.system.thermals.push(t);
    inst.system.demands.push(demand("b1", 2000.0));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t1"));
    let mut day = [0.0; HOURS_PER_DAY];
    day[1] = 50.0; // hour 2
    day[2] = 10.0;
    inst.scenarios.inelastic_demand.insert("b1".into(), hourly(&inst, day));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_mip(&f.model, &cfg()).unwrap();
    let g2 = sol.primal[f.index.thermal_gen[0][1].index()];
    assert!((g2 - 10.0).abs() < 1e-6, "g2 {}", g2);
    let deficit2 = sol.primal[f.index.deficit[0].as_ref().unwrap()[1].index()];
    assert!((deficit2 - 40.0).abs() < 1e-6);
}

#[test]
fn elastic_demand_served_when_price_beats_cost() {
    let mut inst = base_instance("elastic");
    inst.system.buses.push(bus("b1"));
    inst.system.thermals.push(thermal("t1", "b1", 100.0, 20.0));
    let mut d = demand("b1", 2000.0);
    d.elastic = vec![
        gtep_core::system::ElasticSegment {
            price: 50.0, // above marginal cost: serve fully
            max_quantity: vec![5.0; HOURS_PER_DAY],
        },
        gtep_core::system::ElasticSegment {
            price: 10.0, // below marginal cost: don't serve
            max_quantity: vec![5.0; HOURS_PER_DAY],
        },
    ];
    inst.system.demands.push(d);
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t1"));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 30.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_lp(&f.model, &cfg()).unwrap();
    for h in 0..HOURS_PER_DAY {
        assert!((sol.primal[f.index.elastic[0][0][h].index()] - 5.0).abs() < 1e-6);
        assert!(sol.primal[f.index.elastic[0][1][h].index()].abs() < 1e-6);
    }
}

#[test]
fn precedence_forces_required_project() {
    // dependent plant is very attractive; precedence drags the required
    // project in despite its cost
    let mut inst = base_instance("prec");
    inst.system.buses.push(bus("b1"));
    inst.system.thermals.push(thermal("need", "b1", 5.0, 40.0));
    inst.system.thermals.push(thermal("want", "b1", 100.0, 1.0));
    inst.system.demands.push(demand("b1", 3000.0));
    inst.catalog.projects.push(candidate(TargetKind::Thermal, "need", 1e5));
    inst.catalog.projects.push(candidate(TargetKind::Thermal, "want", 1e5));
    inst.catalog
        .precedence
        .push(("p_need".into(), "p_want".into()));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 80.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_mip(&f.model, &cfg()).unwrap();
    let x_need = sol.primal[f.index.project_x[0].index()];
    let x_want = sol.primal[f.index.project_x[1].index()];
    assert!((x_want - 1.0).abs() < 1e-9, "attractive project built");
    assert!((x_need - 1.0).abs() < 1e-9, "precedence forces the required one");
}

#[test]
fn exclusivity_with_both_forced_is_infeasible() {
    let mut inst = base_instance("excl");
    inst.system.buses.push(bus("b1"));
    inst.system.thermals.push(thermal("a", "b1", 10.0, 10.0));
    inst.system.thermals.push(thermal("b", "b1", 10.0, 10.0));
    inst.system.demands.push(demand("b1", 1000.0));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "a"));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "b"));
    inst.catalog.exclusivity.push(vec!["p_a".into(), "p_b".into()]);
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 5.0));
    assert_valid(&inst);
    let f = build_yearly_model(&YearView::single_year(&inst)).unwrap();
    let sol = solve_mip(&f.model, &cfg()).unwrap();
    assert_eq!(sol.status, SolveStatus::Infeasible);
}

#[test]
fn unbuilt_circuit_lets_angles_swing_free() {
    // candidate circuit left unbuilt: flows zero, and the model stays
    // optimal with its pair of disjunctive rows removed
    let mut inst = base_instance("bigm");
    inst.system.buses.push(bus("b1"));
    inst.system.buses.push(bus("b2"));
    inst.system.thermals.push(thermal("t1", "b1", 100.0, 10.0));
    inst.system.thermals.push(thermal("t2", "b2", 100.0, 11.0));
    inst.system.lines.push(circuit("cand", "b1", "b2", 50.0, 5.0));
    inst.system.demands.push(demand("b2", 2000.0));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t1"));
    inst.catalog.projects.push(existing(TargetKind::Thermal, "t2"));
    inst.catalog.projects.push(candidate(TargetKind::Line, "cand", 1e9));
    inst.scenarios
        .inelastic_demand
        .insert("b2".into(), flat(&inst, 50.0));
    assert_valid(&inst);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_mip(&f.model, &cfg()).unwrap();
    let x = sol.primal[f.index.project_x[2].index()];
    assert!(x < 1e-9);
    for slot in 0..HOURS_PER_DAY {
        assert!(sol.primal[f.index.flow_fwd[0][slot].index()].abs() < 1e-9);
        assert!(sol.primal[f.index.flow_bwd[0][slot].index()].abs() < 1e-9);
    }
    // removing the disjunctive rows must not move the optimum
    let kvl = f.index.kvl_rows[0].as_ref().unwrap();
    let stripped = f
        .model
        .without_rows(|r| kvl.iter().any(|&(lo, hi)| r == lo || r == hi));
    let sol2 = solve_mip(&stripped, &cfg()).unwrap();
    assert!(
        (sol2.objective - sol.objective).abs() <= 1e-6 * (1.0 + sol.objective.abs()),
        "stripped {} vs {}",
        sol2.objective,
        sol.objective
    );
}

#[test]
fn cost_scaling_preserves_argmin() {
    // scaling every cost by a positive constant scales the objective and
    // keeps the same optimal investment vector
    let seed = 42;
    let opts = gtep_testkit::instances::GenOptions::lean(2);
    let inst = gtep_testkit::instances::random_instance(seed, &opts);
    let view = YearView::single_year(&inst);
    let f = build_yearly_model(&view).unwrap();
    let sol = solve_mip(&f.model, &cfg()).unwrap();

    let kappa = 3.5;
    let mut scaled = inst.clone();
    for p in scaled.catalog.projects.iter_mut() {
        p.investment_cost *= kappa;
    }
    for t in scaled.system.thermals.iter_mut() {
        t.op_cost *= kappa;
        t.startup_cost *= kappa;
    }
    for h in scaled.system.hydros.iter_mut() {
        h.om_cost *= kappa;
        h.penalty_storage *= kappa;
        h.penalty_turbining *= kappa;
        h.penalty_outflow *= kappa;
    }
    for d in scaled.system.demands.iter_mut() {
        d.deficit_cost *= kappa;
        for seg in d.elastic.iter_mut() {
            seg.price *= kappa;
        }
    }
    for g in scaled.system.generation_groups.iter_mut() {
        g.violation_penalty *= kappa;
    }
    for r in scaled.system.reserve_requirements.iter_mut() {
        r.violation_penalty *= kappa;
    }
    let view2 = YearView::single_year(&scaled);
    let f2 = build_yearly_model(&view2).unwrap();
    let sol2 = solve_mip(&f2.model, &cfg()).unwrap();
    assert!(
        (sol2.objective - kappa * sol.objective).abs() <= 1e-6 * (1.0 + kappa * sol.objective.abs())
    );
    for (a, b) in f.index.project_x.iter().zip(&f2.index.project_x) {
        assert!((sol.primal[a.index()] - sol2.primal[b.index()]).abs() < 1e-6);
    }
}

#[test]
fn variable_and_row_counts_scale_linearly_in_scenarios() {
    let opts1 = gtep_testkit::instances::GenOptions::lean(1);
    let inst1 = gtep_testkit::instances::random_instance(7, &opts1);
    let mut opts2 = opts1.clone();
    opts2.scenarios = 2;
    let inst2 = gtep_testkit::instances::random_instance(7, &opts2);

    let f1 = build_yearly_model(&YearView::single_year(&inst1)).unwrap();
    let f2 = build_yearly_model(&YearView::single_year(&inst2)).unwrap();
    let p = inst1.catalog.projects.len();
    assert_eq!(p, inst2.catalog.projects.len());
    assert_eq!(f2.model.num_vars() - p, 2 * (f1.model.num_vars() - p));
}

#[test]
fn fixed_decisions_make_pure_operation_model() {
    let opts = gtep_testkit::instances::GenOptions::lean(3);
    let inst = gtep_testkit::instances::random_instance(11, &opts);
    let all_on: std::collections::BTreeMap<String, f64> = inst
        .catalog
        .projects
        .iter()
        .map(|p| (p.id.clone(), 1.0))
        .collect();
    let view = YearView::for_year(&inst, 1, all_on);
    let f = build_yearly_model(&view).unwrap();
    let mip = solve_mip(&f.model, &cfg()).unwrap();
    let lp = solve_lp(&f.model, &cfg()).unwrap();
    assert!((mip.objective - lp.objective).abs() <= 1e-6 * (1.0 + lp.objective.abs()));
}

#[test]
fn objective_decomposition_matches_solver_objective() {
    for seed in [3, 5, 9] {
        let opts = gtep_testkit::instances::GenOptions::rich(3);
        let inst = gtep_testkit::instances::random_instance(seed, &opts);
        let view = YearView::single_year(&inst);
        let f = build_yearly_model(&view).unwrap();
        let sol = solve_mip(&f.model, &cfg()).unwrap();
        let costs = compute_costs(&view, &f, &sol);
        assert!(
            (costs.total - sol.objective).abs() <= 1e-6 * (1.0 + sol.objective.abs()),
            "seed {}: decomposed {} vs solver {}",
            seed,
            costs.total,
            sol.objective
        );
    }
}
