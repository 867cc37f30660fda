//! External solver backend: export MPS, invoke a configured command as a
//! subprocess, and parse its solution file.
//!
//! The accepted solution-file grammar is the GLPK plain-text format written
//! by `glpsol --write` (see docs/formats.md): comment lines start with `c`,
//! a status line `s bas|mip <m> <n> <status...> <obj>`, row lines
//! `i <idx> ...` and column lines `j <idx> ...`. Column indices are 1-based
//! in MPS column order, which matches the model's variable order.

use std::io::Write as _;
use std::process::Command;

use gtep_milp::mps::export_mps;
use gtep_milp::{Integrality, MilpModel, Scalar};

use crate::check;
use crate::config::SolveConfig;
use crate::simplex::{LpStatus, SimplexSolver};
use crate::solution::{SolveError, SolveStats, SolveStatus, Solution};

/// Command template for an external solver. `{mps}` and `{sol}` are
/// replaced by the input and output paths; the template is split on
/// whitespace (no shell quoting).
#[derive(Clone, Debug)]
pub struct ExternalSolver {
    pub command_template: String,
}

impl ExternalSolver {
    pub fn new(template: impl Into<String>) -> Self {
        Self {
            command_template: template.into(),
        }
    }
}

struct ParsedSolution<T> {
    status: SolveStatus,
    objective: T,
    col_primal: Vec<T>,
    row_dual: Option<Vec<T>>,
}

/// Solve through the external command. Semantics match [`crate::solve_mip`];
/// a failure anywhere (spawn, exit status, parse, residual check) surfaces
/// with the raw solver log attached, never a silent fallback.
pub fn solve_external<T: Scalar>(
    model: &MilpModel<T>,
    cfg: &SolveConfig<T>,
    ext: &ExternalSolver,
) -> Result<Solution<T>, SolveError> {
    if !model.is_sealed() {
        return Err(SolveError::NotSealed);
    }
    if !ext.command_template.contains("{mps}") || !ext.command_template.contains("{sol}") {
        return Err(SolveError::Config(
            "external command template must contain {mps} and {sol} placeholders".into(),
        ));
    }
    let dir = tempfile::tempdir()?;
    let mps_path = dir.path().join("model.mps");
    let sol_path = dir.path().join("model.sol");
    let doc = export_mps(model);
    std::fs::File::create(&mps_path)?.write_all(doc.text.as_bytes())?;

    let parts: Vec<String> = ext
        .command_template
        .split_whitespace()
        .map(|p| {
            p.replace("{mps}", &mps_path.to_string_lossy())
                .replace("{sol}", &sol_path.to_string_lossy())
        })
        .collect();
    let output = Command::new(&parts[0]).args(&parts[1..]).output().map_err(|e| {
        SolveError::Process {
            msg: format!("failed to launch {:?}: {}", parts[0], e),
            log: String::new(),
        }
    })?;
    let log = format!(
        "{}\n{}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
    if !output.status.success() {
        return Err(SolveError::Process {
            msg: format!("external solver exited with {}", output.status),
            log,
        });
    }
    let sol_text = std::fs::read_to_string(&sol_path).map_err(|e| SolveError::Process {
        msg: format!("solution file not readable: {}", e),
        log: log.clone(),
    })?;
    let parsed: ParsedSolution<T> = parse_solution(&sol_text, model.num_rows(), model.num_vars())
        .map_err(|msg| SolveError::Parse {
            msg,
            log: sol_text.clone(),
        })?;

    match parsed.status {
        SolveStatus::Infeasible => {
            return Ok(Solution {
                status: SolveStatus::Infeasible,
                primal: Vec::new(),
                objective: T::infinity(),
                duals: Vec::new(),
                gap: T::zero(),
                stats: SolveStats::default(),
            })
        }
        SolveStatus::Unbounded => {
            return Ok(Solution {
                status: SolveStatus::Unbounded,
                primal: Vec::new(),
                objective: T::neg_infinity(),
                duals: Vec::new(),
                gap: T::zero(),
                stats: SolveStats::default(),
            })
        }
        SolveStatus::Optimal | SolveStatus::GapLimit => {}
    }

    // snap binaries before checking so 1e-9 drift in a foreign solution
    // does not masquerade as fractionality
    let mut primal = parsed.col_primal;
    for v in model.var_ids() {
        if model.integrality(v) == Integrality::Binary {
            let x = primal[v.index()];
            if (x - x.round()).abs() <= T::of(1e-5) {
                primal[v.index()] = x.round();
            }
        }
    }
    let report = check::check_primal(model, &primal, cfg.feasibility_tolerance);
    if !report.rows_and_bounds_ok(cfg.feasibility_tolerance * T::of(100.0))
        || report.max_integrality_violation > T::of(1e-5)
    {
        return Err(SolveError::Mismatch {
            msg: format!(
                "external solution fails the residual re-check: rows {}, bounds {}, integrality {}",
                report.max_row_violation, report.max_bound_violation,
                report.max_integrality_violation
            ),
            log,
        });
    }
    let objective = model.eval_objective(&primal);
    if (objective - parsed.objective).abs() > T::of(1e-4) * (T::one() + objective.abs()) {
        return Err(SolveError::Mismatch {
            msg: format!(
                "reported objective {} disagrees with recomputed {}",
                parsed.objective, objective
            ),
            log,
        });
    }

    // duals: taken from the file for LP solutions, otherwise from the
    // embedded LP with the integers fixed at the external solution
    let duals = match parsed.row_dual {
        Some(d) => d,
        None => {
            let solver = SimplexSolver::new(model, cfg.clone())?;
            let overrides: Vec<(usize, T, T)> = model
                .var_ids()
                .filter(|&v| model.integrality(v) == Integrality::Binary)
                .map(|v| {
                    let x = primal[v.index()].round();
                    (v.index(), x, x)
                })
                .collect();
            let lp = solver.solve_with_overrides(&overrides)?;
            if lp.status != LpStatus::Optimal {
                return Err(SolveError::Mismatch {
                    msg: "embedded LP with integers fixed at the external solution is not feasible"
                        .into(),
                    log,
                });
            }
            lp.duals
        }
    };

    Ok(Solution {
        status: parsed.status,
        primal,
        objective,
        duals,
        gap: T::zero(),
        stats: SolveStats::default(),
    })
}

fn parse_solution<T: Scalar>(
    text: &str,
    m: usize,
    n: usize,
) -> Result<ParsedSolution<T>, String> {
    let mut kind: Option<&str> = None;
    let mut status = SolveStatus::Optimal;
    let mut objective = T::zero();
    let mut col_primal = vec![T::zero(); n];
    let mut row_dual: Option<Vec<T>> = None;
    let mut seen_cols = 0usize;

    let num = |tok: &str| -> Result<T, String> {
        tok.parse::<f64>()
            .map(T::of)
            .map_err(|_| format!("bad number {:?}", tok))
    };

    for line in text.lines() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first() {
            None | Some(&"c") | Some(&"e") => continue,
            Some(&"s") => {
                if toks.len() < 5 {
                    return Err("short status line".into());
                }
                kind = Some(match toks[1] {
                    "bas" => "bas",
                    "mip" => "mip",
                    other => return Err(format!("unsupported solution kind {:?}", other)),
                });
                let fm: usize = toks[2].parse().map_err(|_| "bad row count".to_string())?;
                let fn_: usize = toks[3].parse().map_err(|_| "bad column count".to_string())?;
                if fm != m || fn_ != n {
                    return Err(format!(
                        "dimension mismatch: file {}x{}, model {}x{}",
                        fm, fn_, m, n
                    ));
                }
                let (st, obj_tok) = if toks[1] == "bas" {
                    if toks.len() < 7 {
                        return Err("short bas status line".into());
                    }
                    ((toks[4], toks[5]), toks[6])
                } else {
                    ((toks[4], toks[4]), toks[5])
                };
                status = match st {
                    ("o", _) | ("f", "f") => SolveStatus::Optimal,
                    ("f", _) => SolveStatus::GapLimit,
                    ("n", _) | (_, "n") => SolveStatus::Infeasible,
                    other => return Err(format!("unsupported solution status {:?}", other)),
                };
                objective = num(obj_tok)?;
                if toks[1] == "bas" {
                    row_dual = Some(vec![T::zero(); m]);
                }
            }
            Some(&"i") => {
                if kind.is_none() {
                    return Err("row line before status line".into());
                }
                let idx: usize = toks
                    .get(1)
                    .ok_or("short row line")?
                    .parse()
                    .map_err(|_| "bad row index".to_string())?;
                if idx == 0 || idx > m {
                    return Err(format!("row index {} out of range", idx));
                }
                if let Some(duals) = row_dual.as_mut() {
                    // i <idx> <st> <prim> <dual>
                    let dual_tok = toks.get(4).ok_or("short bas row line")?;
                    duals[idx - 1] = num(dual_tok)?;
                }
            }
            Some(&"j") => {
                let idx: usize = toks
                    .get(1)
                    .ok_or("short column line")?
                    .parse()
                    .map_err(|_| "bad column index".to_string())?;
                if idx == 0 || idx > n {
                    return Err(format!("column index {} out of range", idx));
                }
                let prim_tok = if kind == Some("bas") {
                    toks.get(3).ok_or("short bas column line")?
                } else {
                    toks.get(2).ok_or("short mip column line")?
                };
                col_primal[idx - 1] = num(prim_tok)?;
                seen_cols += 1;
            }
            Some(other) => return Err(format!("unrecognized line tag {:?}", other)),
        }
    }
    if kind.is_none() {
        return Err("missing status (s) line".into());
    }
    if status == SolveStatus::Optimal && seen_cols < n {
        return Err(format!("only {} of {} columns present", seen_cols, n));
    }
    Ok(ParsedSolution {
        status,
        objective,
        col_primal,
        row_dual,
    })
}
