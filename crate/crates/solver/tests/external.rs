//! External backend plumbing: command invocation, solution-file parsing,
//! and agreement with the embedded solver through a scripted stand-in.

use gtep_milp::{Integrality, MilpModel, RowSense};
use gtep_solver::{solve_external, solve_mip, ExternalSolver, SolveConfig, SolveError, SolveStatus};
use gtep_testkit::solfile;

fn toy() -> MilpModel<f64> {
    let mut m = MilpModel::new("ext2proj");
    let xa = m.add_binary("x[a]").unwrap();
    let xb = m.add_binary("x[b]").unwrap();
    let ga = m.add_variable("g[a]", 0.0, 60.0, Integrality::Continuous).unwrap();
    let gb = m.add_variable("g[b]", 0.0, 80.0, Integrality::Continuous).unwrap();
    let d = m.add_variable("deficit", 0.0, 100.0, Integrality::Continuous).unwrap();
    m.set_obj_coeff(xa, 300.0).unwrap();
    m.set_obj_coeff(xb, 500.0).unwrap();
    m.set_obj_coeff(ga, 5.0).unwrap();
    m.set_obj_coeff(gb, 2.0).unwrap();
    m.set_obj_coeff(d, 50.0).unwrap();
    m.add_constraint("gate[a]", &[(ga, 1.0), (xa, -60.0)], RowSense::Le, 0.0).unwrap();
    m.add_constraint("gate[b]", &[(gb, 1.0), (xb, -80.0)], RowSense::Le, 0.0).unwrap();
    m.add_constraint("balance", &[(ga, 1.0), (gb, 1.0), (d, 1.0)], RowSense::Eq, 100.0)
        .unwrap();
    m.seal();
    m
}

#[test]
fn scripted_external_agrees_with_embedded() {
    let m = toy();
    let cfg = SolveConfig::tight();
    let embedded = solve_mip(&m, &cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let canned = solfile::format_mip_solution(&m, &embedded);
    let template = solfile::write_fake_solver_script(dir.path(), &canned).unwrap();
    let ext = solve_external(&m, &cfg, &ExternalSolver::new(template)).unwrap();
    assert_eq!(ext.status, SolveStatus::Optimal);
    assert!((ext.objective - embedded.objective).abs() <= 1e-6 * (1.0 + embedded.objective.abs()));
    // duals come from the embedded fixed-integer LP in the mip format
    assert_eq!(ext.duals.len(), m.num_rows());
}

#[test]
fn bas_format_supplies_duals() {
    let mut m = MilpModel::new("lp");
    let x = m
        .add_variable("x", 0.0, f64::INFINITY, Integrality::Continuous)
        .unwrap();
    m.set_obj_coeff(x, 1.0).unwrap();
    m.add_constraint("floor", &[(x, 1.0)], RowSense::Ge, 3.0).unwrap();
    m.seal();
    let cfg = SolveConfig::default();
    let embedded = gtep_solver::solve_lp(&m, &cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let canned = solfile::format_bas_solution(&m, &embedded);
    let template = solfile::write_fake_solver_script(dir.path(), &canned).unwrap();
    let ext = solve_external(&m, &cfg, &ExternalSolver::new(template)).unwrap();
    assert!((ext.duals[0] - 1.0).abs() < 1e-9);
}

#[test]
fn unreachable_command_is_a_hard_error() {
    let m = toy();
    let ext = ExternalSolver::new("/nonexistent/solver/binary {mps} {sol}");
    let err = solve_external(&m, &SolveConfig::default(), &ext).unwrap_err();
    assert!(matches!(err, SolveError::Process { .. }), "{:?}", err);
}

#[test]
fn template_without_placeholders_is_config_error() {
    let m = toy();
    let ext = ExternalSolver::new("solver --input only");
    let err = solve_external(&m, &SolveConfig::default(), &ext).unwrap_err();
    assert!(matches!(err, SolveError::Config(_)));
}

#[test]
fn infeasible_status_passes_through() {
    let mut m = MilpModel::new("inf");
    let x = m
        .add_variable("x", 0.0, f64::INFINITY, Integrality::Continuous)
        .unwrap();
    m.add_constraint("le", &[(x, 1.0)], RowSense::Le, 1.0).unwrap();
    m.add_constraint("ge", &[(x, 1.0)], RowSense::Ge, 2.0).unwrap();
    m.seal();
    let cfg = SolveConfig::default();
    let embedded = solve_mip(&m, &cfg).unwrap();
    assert_eq!(embedded.status, SolveStatus::Infeasible);
    let dir = tempfile::tempdir().unwrap();
    let canned = format!("c infeasible\ns mip {} {} n 0\n", m.num_rows(), m.num_vars());
    let template = solfile::write_fake_solver_script(dir.path(), &canned).unwrap();
    let ext = solve_external(&m, &cfg, &ExternalSolver::new(template)).unwrap();
    assert_eq!(ext.status, SolveStatus::Infeasible);
}

#[test]
fn bogus_solution_is_rejected_by_residual_check() {
    let m = toy();
    let cfg = SolveConfig::default();
    // claims optimal but the point violates the balance row
    let mut canned = format!("s mip {} {} o 123.0\n", m.num_rows(), m.num_vars());
    for v in 1..=m.num_vars() {
        canned.push_str(&format!("j {} 0\n", v));
    }
    let dir = tempfile::tempdir().unwrap();
    let template = solfile::write_fake_solver_script(dir.path(), &canned).unwrap();
    let err = solve_external(&m, &cfg, &ExternalSolver::new(template)).unwrap_err();
    assert!(matches!(err, SolveError::Mismatch { .. }), "{:?}", err);
}

#[test]
fn garbage_file_is_a_parse_error() {
    let m = toy();
    let dir = tempfile::tempdir().unwrap();
    let template = solfile::write_fake_solver_script(dir.path(), "not a solution\n").unwrap();
    let err = solve_external(&m, &SolveConfig::default(), &ExternalSolver::new(template)).unwrap_err();
    assert!(matches!(err, SolveError::Parse { .. }), "{:?}", err);
}
