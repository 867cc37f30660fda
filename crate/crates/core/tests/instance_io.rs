//! Instance document round trip and sidecar CSV loading.

mod common;

use std::path::Path;

use common::*;
use gtep_core::catalog::TargetKind;
use gtep_core::formulation::{build_yearly_model, YearView};
use gtep_core::Instance;
use gtep_testkit::instances::{random_instance, GenOptions};

#[test]
fn to_json_from_json_is_faithful() {
    for seed in [1u64, 2, 3] {
        let original = random_instance(seed, &GenOptions::rich(3));
        let text = format!("{}", original.to_json());
        let reloaded = Instance::from_json(&text, Path::new(".")).unwrap();
        assert!(reloaded.validate().is_clean());
        // both instances must produce structurally identical models
        let f1 = build_yearly_model(&YearView::single_year(&original)).unwrap();
        let f2 = build_yearly_model(&YearView::single_year(&reloaded)).unwrap();
        assert!(f1.model.same_structure(&f2.model), "seed {}", seed);
    }
}

#[test]
fn sidecar_csv_profiles_load() {
    let dir = tempfile::tempdir().unwrap();
    // hourly demand: value encodes the (t,d,h,s) cell so placement is checked
    let mut hourly_rows = String::from("season,typical_day,hour,scenario,value\n");
    for s in 1..=2 {
        for h in 1..=24 {
            hourly_rows.push_str(&format!("1,1,{},{},{}\n", h, s, 10.0 + h as f64 + 100.0 * s as f64));
        }
    }
    std::fs::write(dir.path().join("demand.csv"), hourly_rows).unwrap();
    let mut seasonal_rows = String::from("season,scenario,value\n");
    for s in 1..=2 {
        seasonal_rows.push_str(&format!("1,{},{}\n", s, 500.0 * s as f64));
    }
    std::fs::write(dir.path().join("inflow.csv"), seasonal_rows).unwrap();

    let doc = serde_json::json!({
        "name": "csvtest",
        "system": {
            "buses": [{"id": "b1"}],
            "hydros": [{
                "id": "h1", "bus_id": "b1", "v_max": 1000.0, "u_max": 1000.0,
                "rho": 1.0, "g_max": 50.0
            }],
            "demands": [{"bus_id": "b1", "deficit_cost": 1000.0}]
        },
        "catalog": {
            "projects": [
                {"id": "p_h1", "target_kind": "hydro", "target_id": "h1",
                 "investment_cost": 0.0, "decision": "obligatory"}
            ]
        },
        "time": {
            "seasons": [{"months": [1,2,3,4,5,6,7,8,9,10,11,12], "typical_day_weights": [365.0]}]
        },
        "scenarios": {
            "probabilities": [0.5, 0.5],
            "inflows": {"h1": {"csv": "inflow.csv"}},
            "inelastic_demand": {"b1": {"csv": "demand.csv"}}
        }
    });
    let path = dir.path().join("instance.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let instance = Instance::from_path(&path).unwrap();
    assert!(instance.validate().is_clean(), "{}", instance.validate());
    let demand = &instance.scenarios.inelastic_demand["b1"];
    assert_eq!(demand.get(0, 0, 0, 0), 111.0);
    assert_eq!(demand.get(1, 0, 0, 23), 234.0);
    let inflow = &instance.scenarios.inflow["h1"];
    assert_eq!(inflow.get(0, 0), 500.0);
    assert_eq!(inflow.get(1, 0), 1000.0);
}

#[test]
fn missing_csv_cell_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = String::from("season,typical_day,hour,scenario,value\n");
    for h in 1..=23 {
        rows.push_str(&format!("1,1,{},1,5.0\n", h));
    }
    std::fs::write(dir.path().join("demand.csv"), rows).unwrap();
    let doc = serde_json::json!({
        "system": {"buses": [{"id": "b1"}],
                   "demands": [{"bus_id": "b1", "deficit_cost": 1000.0}]},
        "catalog": {"projects": []},
        "time": {"seasons": [{"months": [1,2,3,4,5,6,7,8,9,10,11,12],
                               "typical_day_weights": [365.0]}]},
        "scenarios": {"probabilities": [1.0],
                       "inelastic_demand": {"b1": {"csv": "demand.csv"}}}
    });
    let path = dir.path().join("instance.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let err = Instance::from_path(&path).unwrap_err();
    assert!(err.to_string().contains("missing cells"), "{}", err);
}

#[test]
fn capex_lifetime_resolves_through_annuity() {
    let mut inst = base_instance("annuity");
    inst.system.buses.push(bus("b1"));
    inst.system.thermals.push(thermal("t1", "b1", 50.0, 10.0));
    inst.system.demands.push(demand("b1", 1000.0));
    inst.catalog.projects.push(candidate(TargetKind::Thermal, "t1", 0.0));
    inst.scenarios
        .inelastic_demand
        .insert("b1".into(), flat(&inst, 20.0));
    let mut doc = inst.to_json();
    doc["horizon"]["annual_discount_rate"] = serde_json::json!(0.1);
    doc["catalog"]["projects"][0] = serde_json::json!({
        "id": "p_t1", "target_kind": "thermal", "target_id": "t1",
        "capex": 100.0, "lifetime_years": 20, "decision": "binary"
    });
    let reloaded = Instance::from_json(&doc.to_string(), Path::new(".")).unwrap();
    let cost = reloaded.catalog.projects[0].investment_cost;
    assert!((cost - 11.745962477254576).abs() < 1e-9, "{}", cost);
}

#[test]
fn day_assignment_mode_builds_weights() {
    let mut assignment = Vec::new();
    for month in 1..=12u32 {
        for day in 1..=gtep_core::time::DAYS_IN_MONTH[month as usize - 1] {
            assignment.push(serde_json::json!({
                "month": month, "day": day, "season": 0,
                "typical_day": if day <= 10 { 0 } else { 1 }
            }));
        }
    }
    let doc = serde_json::json!({
        "system": {"buses": [{"id": "b1"}]},
        "catalog": {"projects": []},
        "time": {"seasons": [{"months": [1,2,3,4,5,6,7,8,9,10,11,12]}],
                 "day_assignment": assignment},
        "scenarios": {"probabilities": [1.0]}
    });
    let instance = Instance::from_json(&doc.to_string(), Path::new(".")).unwrap();
    // 12 months x 10 early days = 120; the rest of the year = 245
    assert_eq!(instance.time.seasons[0].typical_day_weights, vec![120.0, 245.0]);
    assert_eq!(instance.time.total_weight(), 365.0);
}
