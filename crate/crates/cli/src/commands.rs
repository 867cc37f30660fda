//! Subcommand implementations.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use gtep_core::cluster::{suggest_typical_days, DailyProfiles};
use gtep_core::formulation::{build_yearly_model, verify, YearView};
use gtep_core::instance::Instance;
use gtep_core::planner::run_rolling_horizon;
use gtep_core::report::{compute_costs, dispatch_records};
use gtep_solver::{Backend, ExternalSolver, SolveConfig};

use crate::output;
use crate::{CliFailure, SolverArgs};

impl SolverArgs {
    fn config(&self) -> Result<SolveConfig<f64>, CliFailure> {
        let mut cfg = SolveConfig::default();
        if let Some(g) = self.mip_gap {
            if g < 0.0 {
                return Err(CliFailure::io(anyhow!("mip gap must be nonnegative")));
            }
            cfg.mip_gap = g;
        }
        if let Some(t) = self.feas_tol {
            if t <= 0.0 {
                return Err(CliFailure::io(anyhow!("feasibility tolerance must be positive")));
            }
            cfg.feasibility_tolerance = t;
        }
        if let Some(t) = self.opt_tol {
            if t <= 0.0 {
                return Err(CliFailure::io(anyhow!("optimality tolerance must be positive")));
            }
            cfg.optimality_tolerance = t;
        }
        cfg.node_limit = self.node_limit;
        cfg.time_limit = self.time_limit;
        Ok(cfg)
    }

    fn backend(&self) -> Result<Backend, CliFailure> {
        match self.backend.as_str() {
            "embedded" => Ok(Backend::Embedded),
            "external" => {
                let cmd = self.solver_cmd.clone().ok_or_else(|| {
                    CliFailure::io(anyhow!(
                        "--backend external needs --solver-cmd or GTEP_SOLVER_CMD"
                    ))
                })?;
                Ok(Backend::External(ExternalSolver::new(cmd)))
            }
            other => Err(CliFailure::io(anyhow!("unknown backend {:?}", other))),
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance, CliFailure> {
    Instance::from_path(path)
        .with_context(|| format!("loading instance {}", path.display()))
        .map_err(CliFailure::io)
}

pub fn validate(path: &Path) -> Result<ExitCode, CliFailure> {
    let instance = load_instance(path)?;
    let report = instance.validate();
    if report.is_clean() {
        println!("ok: instance {:?} is well-formed", instance.name);
        Ok(ExitCode::SUCCESS)
    } else {
        print!("{}", report);
        println!("{} finding(s)", report.findings.len());
        Ok(ExitCode::from(1))
    }
}

pub fn plan(
    path: &Path,
    out_dir: &Path,
    solver: &SolverArgs,
    export_models: bool,
    dump_index: bool,
) -> Result<ExitCode, CliFailure> {
    let instance = load_instance(path)?;
    let report = instance.validate();
    if !report.is_clean() {
        print!("{}", report);
        return Ok(ExitCode::from(1));
    }
    let cfg = solver.config()?;
    let backend = solver.backend()?;
    std::fs::create_dir_all(out_dir).map_err(CliFailure::io)?;

    let run = run_rolling_horizon(&instance, &cfg, &backend).map_err(CliFailure::solve)?;

    for solved in &run.years {
        let view = YearView::for_year(&instance, solved.year, solved.fixed.clone());
        for warning in &solved.formulation.warnings {
            eprintln!("warning (year {}): {}", solved.year, warning);
        }
        let check = verify::verify_solution(&view, &solved.formulation, &solved.solution);
        if !check.within(1e-6) {
            return Err(CliFailure::solve(anyhow!(
                "year {} solution failed verification: {:?}",
                solved.year,
                check
            )));
        }
        if export_models {
            output::write_model_files(out_dir, solved.year, &solved.formulation.model)
                .map_err(CliFailure::io)?;
        }
        if dump_index {
            output::write_index_dump(out_dir, solved.year, &solved.formulation)
                .map_err(CliFailure::io)?;
        }
    }

    output::write_plan_json(out_dir, &run.plan).map_err(CliFailure::io)?;
    output::write_costs_csv(out_dir, &run.plan).map_err(CliFailure::io)?;
    output::write_dispatch_csv(out_dir, &instance, &run).map_err(CliFailure::io)?;

    for year in &run.plan.years {
        println!(
            "year {}: objective {:.6} (new: {})",
            year.year,
            year.objective,
            if year.new_projects.is_empty() {
                "none".to_string()
            } else {
                year.new_projects.join(", ")
            }
        );
    }
    println!(
        "total discounted cost {:.6} -> {}",
        run.plan.total_discounted_cost,
        out_dir.join("plan.json").display()
    );
    Ok(ExitCode::SUCCESS)
}

pub fn dispatch(
    path: &Path,
    out_dir: &Path,
    year: usize,
    plan_path: Option<&Path>,
    solver: &SolverArgs,
) -> Result<ExitCode, CliFailure> {
    let instance = load_instance(path)?;
    let report = instance.validate();
    if !report.is_clean() {
        print!("{}", report);
        return Ok(ExitCode::from(1));
    }
    if year < 1 || year > instance.horizon.years {
        return Err(CliFailure::io(anyhow!(
            "year {} outside the {}-year horizon",
            year,
            instance.horizon.years
        )));
    }
    let cfg = solver.config()?;
    let backend = solver.backend()?;
    std::fs::create_dir_all(out_dir).map_err(CliFailure::io)?;

    // fix every decision: plan values for decided projects, zero for
    // undecided candidates, one for obligatory entries
    let mut fixed: BTreeMap<String, f64> = BTreeMap::new();
    if let Some(pp) = plan_path {
        let text = std::fs::read_to_string(pp).map_err(CliFailure::io)?;
        let parsed: serde_json::Value = serde_json::from_str(&text).map_err(CliFailure::io)?;
        let projects = parsed["projects"]
            .as_array()
            .ok_or_else(|| CliFailure::io(anyhow!("plan file has no projects array")))?;
        for p in projects {
            let id = p["id"]
                .as_str()
                .ok_or_else(|| CliFailure::io(anyhow!("plan project without id")))?;
            let decided = p["decision_year"].as_u64().map(|y| y as usize);
            let value = p["value"].as_f64().unwrap_or(1.0);
            let built = decided.map_or(false, |y| y <= year);
            fixed.insert(id.to_string(), if built { value } else { 0.0 });
        }
    } else {
        for p in &instance.catalog.projects {
            let v = match p.decision {
                gtep_core::catalog::DecisionKind::Obligatory => 1.0,
                _ => 0.0,
            };
            fixed.insert(p.id.clone(), v);
        }
    }

    let view = YearView::for_year(&instance, year, fixed);
    let formulation = build_yearly_model(&view).map_err(CliFailure::solve)?;
    for warning in &formulation.warnings {
        eprintln!("warning: {}", warning);
    }
    let solution =
        gtep_solver::solve(&formulation.model, &cfg, &backend).map_err(CliFailure::solve)?;
    if solution.status != gtep_solver::SolveStatus::Optimal {
        return Err(CliFailure::solve(anyhow!(
            "dispatch ended {:?}",
            solution.status
        )));
    }
    let check = verify::verify_solution(&view, &formulation, &solution);
    if !check.within(1e-6) {
        return Err(CliFailure::solve(anyhow!(
            "solution failed verification: {:?}",
            check
        )));
    }

    let costs = compute_costs(&view, &formulation, &solution);
    output::write_single_year_costs(out_dir, year, &costs).map_err(CliFailure::io)?;
    let records = dispatch_records(&view, &formulation, &solution);
    output::write_dispatch_records(out_dir, &records).map_err(CliFailure::io)?;
    println!(
        "year {}: objective {:.6} -> {}",
        year,
        solution.objective,
        out_dir.join("dispatch.csv").display()
    );
    Ok(ExitCode::SUCCESS)
}

pub fn export(path: &Path, year: usize, out_dir: &Path) -> Result<ExitCode, CliFailure> {
    let instance = load_instance(path)?;
    let report = instance.validate();
    if !report.is_clean() {
        print!("{}", report);
        return Ok(ExitCode::from(1));
    }
    std::fs::create_dir_all(out_dir).map_err(CliFailure::io)?;
    let view = YearView::for_year(&instance, year, BTreeMap::new());
    let formulation = build_yearly_model(&view).map_err(CliFailure::solve)?;
    output::write_model_files(out_dir, year, &formulation.model).map_err(CliFailure::io)?;
    println!(
        "wrote {} and {}",
        out_dir.join(format!("model_y{}.mps", year)).display(),
        out_dir.join(format!("model_y{}.lp", year)).display()
    );
    Ok(ExitCode::SUCCESS)
}

pub fn suggest_days(
    profiles_path: &Path,
    clusters: usize,
    seed: u64,
    month_seasons: Option<&str>,
    out: Option<&Path>,
) -> Result<ExitCode, CliFailure> {
    let text = std::fs::read_to_string(profiles_path).map_err(CliFailure::io)?;
    let profiles: DailyProfiles = serde_json::from_str(&text)
        .context("parsing profiles JSON")
        .map_err(CliFailure::io)?;
    let month_to_season: [usize; 12] = match month_seasons {
        None => [0; 12],
        Some(spec) => {
            let parts: Vec<usize> = spec
                .split(',')
                .map(|p| p.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| CliFailure::io(anyhow!("bad --month-seasons {:?}", spec)))?;
            parts
                .try_into()
                .map_err(|_| CliFailure::io(anyhow!("--month-seasons needs 12 entries")))?
        }
    };
    let suggestion = suggest_typical_days(&profiles, &month_to_season, clusters, seed)
        .map_err(|e| CliFailure::io(anyhow!("{}", e)))?;
    let fragment = serde_json::json!({
        "day_assignment": suggestion.assignment,
        "aggregation_error": suggestion.aggregation_error,
    });
    let rendered = format!("{:#}\n", fragment);
    match out {
        Some(path) => std::fs::write(path, rendered).map_err(CliFailure::io)?,
        None => print!("{}", rendered),
    }
    Ok(ExitCode::SUCCESS)
}
