//! Writers for the solution-file grammar the external backend parses,
//! used to stand up fake external solvers in tests.

use gtep_milp::MilpModel;
use gtep_solver::Solution;
use std::fmt::Write as _;

/// Render a solution in the `s mip` plain-text form.
pub fn format_mip_solution(model: &MilpModel<f64>, sol: &Solution<f64>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "c fake external solver output");
    let _ = writeln!(
        out,
        "s mip {} {} o {}",
        model.num_rows(),
        model.num_vars(),
        sol.objective
    );
    for r in model.row_ids() {
        let _ = writeln!(out, "i {} {}", r.index() + 1, model.eval_row(r, &sol.primal));
    }
    for v in model.var_ids() {
        let _ = writeln!(out, "j {} {}", v.index() + 1, sol.primal[v.index()]);
    }
    out.push_str("e o f\n");
    out
}

/// Render a solution in the `s bas` plain-text form (with duals).
pub fn format_bas_solution(model: &MilpModel<f64>, sol: &Solution<f64>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "s bas {} {} f f {}",
        model.num_rows(),
        model.num_vars(),
        sol.objective
    );
    for r in model.row_ids() {
        let _ = writeln!(
            out,
            "i {} b {} {}",
            r.index() + 1,
            model.eval_row(r, &sol.primal),
            sol.duals.get(r.index()).copied().unwrap_or(0.0)
        );
    }
    for v in model.var_ids() {
        let _ = writeln!(out, "j {} b {} 0", v.index() + 1, sol.primal[v.index()]);
    }
    out
}

/// Write an executable shell script that copies a canned solution file to
/// the path the backend passes as `{sol}`.
pub fn write_fake_solver_script(
    dir: &std::path::Path,
    solution_text: &str,
) -> std::io::Result<String> {
    use std::io::Write as _;
    let sol_file = dir.join("canned.sol");
    std::fs::File::create(&sol_file)?.write_all(solution_text.as_bytes())?;
    let script = dir.join("fakesolver.sh");
    let body = format!("#!/bin/sh\ncp {} \"$2\"\n", sol_file.display());
    std::fs::File::create(&script)?.write_all(body.as_bytes())?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        std::fs::set_permissions(&script, std::fs::Permissions::from_mode(0o755))?;
    }
    Ok(format!("{} {{mps}} {{sol}}", script.display()))
}
