//! Revised simplex against the independent tableau oracle, plus the small
//! behavioral contracts (duals, infeasibility, unboundedness, weak duality).

use gtep_milp::{Integrality, MilpModel, RowSense};
use gtep_solver::{dual_objective, solve_lp, SolveConfig, SolveStatus};
use gtep_testkit::{random_feasible_lp, solve_tableau, TableauStatus};

fn cfg() -> SolveConfig<f64> {
    SolveConfig::default()
}

#[test]
fn min_x_above_floor_has_unit_dual() {
    let mut m: MilpModel<f64> = MilpModel::new("t");
    let x = m
        .add_variable("x", 0.0, f64::INFINITY, Integrality::Continuous)
        .unwrap();
    m.set_obj_coeff(x, 1.0).unwrap();
    let floor = m.add_constraint("floor", &[(x, 1.0)], RowSense::Ge, 3.0).unwrap();
    m.seal();
    let sol = solve_lp(&m, &cfg()).unwrap();
    assert_eq!(sol.status, SolveStatus::Optimal);
    assert!((sol.objective - 3.0).abs() < 1e-9);
    assert!((sol.value(x) - 3.0).abs() < 1e-9);
    assert!((sol.dual(floor) - 1.0).abs() < 1e-9);
}

#[test]
fn contradictory_bounds_report_infeasible() {
    let mut m: MilpModel<f64> = MilpModel::new("t");
    let x = m
        .add_variable("x", 0.0, f64::INFINITY, Integrality::Continuous)
        .unwrap();
    m.add_constraint("le", &[(x, 1.0)], RowSense::Le, 1.0).unwrap();
    m.add_constraint("ge", &[(x, 1.0)], RowSense::Ge, 2.0).unwrap();
    m.seal();
    let sol = solve_lp(&m, &cfg()).unwrap();
    assert_eq!(sol.status, SolveStatus::Infeasible);
    assert!(sol.stats.farkas.is_some());
}

#[test]
fn unbounded_direction_reported() {
    let mut m: MilpModel<f64> = MilpModel::new("t");
    let x = m
        .add_variable("x", 0.0, f64::INFINITY, Integrality::Continuous)
        .unwrap();
    let y = m
        .add_variable("y", 0.0, f64::INFINITY, Integrality::Continuous)
        .unwrap();
    m.set_obj_coeff(x, -1.0).unwrap();
    m.add_constraint("tie", &[(x, 1.0), (y, -1.0)], RowSense::Le, 1.0)
        .unwrap();
    m.seal();
    let sol = solve_lp(&m, &cfg()).unwrap();
    assert_eq!(sol.status, SolveStatus::Unbounded);
    let ray = sol.stats.unbounded_ray.unwrap();
    assert!(ray[x.index()] > 0.0);
}

#[test]
fn equalities_and_free_variables() {
    let mut m: MilpModel<f64> = MilpModel::new("t");
    let x = m
        .add_variable("x", f64::NEG_INFINITY, f64::INFINITY, Integrality::Continuous)
        .unwrap();
    let y = m.add_variable("y", 0.0, 10.0, Integrality::Continuous).unwrap();
    m.set_obj_coeff(x, 2.0).unwrap();
    m.set_obj_coeff(y, 1.0).unwrap();
    m.add_constraint("eq", &[(x, 1.0), (y, 1.0)], RowSense::Eq, 4.0).unwrap();
    m.add_constraint("floor", &[(x, 1.0)], RowSense::Ge, -2.0).unwrap();
    m.seal();
    let sol = solve_lp(&m, &cfg()).unwrap();
    assert_eq!(sol.status, SolveStatus::Optimal);
    // x = -2, y = 6 infeasible (y ≤ 10 ok) → cost -4 + 6 = 2
    assert!((sol.objective - 2.0).abs() < 1e-8, "{}", sol.objective);
}

#[test]
fn matches_tableau_oracle_on_random_lps() {
    let mut solved = 0;
    for seed in 0..120u64 {
        let model = random_feasible_lp(seed, 20, 30);
        let ours = solve_lp(&model, &cfg()).unwrap();
        let oracle = solve_tableau(&model);
        assert_eq!(
            ours.status,
            SolveStatus::Optimal,
            "seed {} must be feasible+bounded",
            seed
        );
        assert_eq!(oracle.status, TableauStatus::Optimal, "oracle seed {}", seed);
        let diff = (ours.objective - oracle.objective).abs();
        assert!(
            diff <= 1e-6 * (1.0 + oracle.objective.abs()),
            "seed {}: ours {} oracle {}",
            seed,
            ours.objective,
            oracle.objective
        );
        // weak duality at every solve
        let dual = dual_objective(&model, &ours.duals);
        assert!(
            dual <= ours.objective + 1e-6 * (1.0 + ours.objective.abs()),
            "seed {}: dual {} primal {}",
            seed,
            dual,
            ours.objective
        );
        solved += 1;
    }
    assert_eq!(solved, 120);
}

#[test]
fn degenerate_transportation_lp_terminates() {
    // classic degenerate structure: equal supplies and demands
    let mut m: MilpModel<f64> = MilpModel::new("deg");
    let mut x = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let v = m
                .add_variable(&format!("x{}_{}", i, j), 0.0, f64::INFINITY, Integrality::Continuous)
                .unwrap();
            m.set_obj_coeff(v, ((i * 7 + j * 3) % 5) as f64 + 1.0).unwrap();
            x.push(v);
        }
    }
    for i in 0..4 {
        let terms: Vec<_> = (0..4).map(|j| (x[i * 4 + j], 1.0)).collect();
        m.add_constraint(&format!("s{}", i), &terms, RowSense::Eq, 10.0).unwrap();
    }
    for j in 0..4 {
        let terms: Vec<_> = (0..4).map(|i| (x[i * 4 + j], 1.0)).collect();
        m.add_constraint(&format!("d{}", j), &terms, RowSense::Eq, 10.0).unwrap();
    }
    m.seal();
    let sol = solve_lp(&m, &cfg()).unwrap();
    let oracle = solve_tableau(&m);
    assert_eq!(sol.status, SolveStatus::Optimal);
    assert!((sol.objective - oracle.objective).abs() < 1e-6);
}
