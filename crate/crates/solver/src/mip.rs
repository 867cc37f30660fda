//! Branch and bound over binary variables: most-fractional branching,
//! best-bound node selection, deterministic tie-breaking by variable and
//! node index.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use gtep_milp::{Integrality, MilpModel, Scalar};

use crate::check;
use crate::config::SolveConfig;
use crate::simplex::{finish_lp, LpStatus, SimplexSolver};
use crate::solution::{SolveError, SolveStats, SolveStatus, Solution};

struct Node<T> {
    bound: T,
    id: u64,
    fixes: Vec<(usize, u8)>,
}

impl<T: Scalar> PartialEq for Node<T> {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.id == other.id
    }
}
impl<T: Scalar> Eq for Node<T> {}
impl<T: Scalar> PartialOrd for Node<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Node<T> {
    // reversed: BinaryHeap is a max-heap, we want smallest bound first,
    // ties to the oldest node
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .partial_cmp(&self.bound)
            .unwrap_or(Ordering::Equal)
            .then(other.id.cmp(&self.id))
    }
}

/// Solve a sealed model honoring binary integrality. Deterministic for a
/// fixed configuration; the reported duals come from the LP with all
/// binaries fixed at their solution values.
pub fn solve_mip<T: Scalar>(
    model: &MilpModel<T>,
    cfg: &SolveConfig<T>,
) -> Result<Solution<T>, SolveError> {
    let solver = SimplexSolver::new(model, cfg.clone())?;
    let binaries: Vec<usize> = model
        .var_ids()
        .filter(|&v| model.integrality(v) == Integrality::Binary)
        .map(|v| v.index())
        .collect();
    let int_tol = cfg.feasibility_tolerance.max(T::of(1e-9));
    let started = Instant::now();

    let root = solver.solve_with_overrides(&[])?;
    match root.status {
        LpStatus::Infeasible | LpStatus::Unbounded => return finish_lp(model, cfg, root),
        LpStatus::Optimal => {}
    }

    let mut stats = SolveStats::<T> {
        simplex_iterations: root.iterations,
        ..SolveStats::default()
    };
    let mut heap: BinaryHeap<Node<T>> = BinaryHeap::new();
    heap.push(Node {
        bound: root.objective,
        id: 0,
        fixes: Vec::new(),
    });
    let mut next_id = 1u64;
    let mut incumbent: Option<(T, Vec<T>)> = None;
    let mut global_lb = root.objective;
    let mut hit_limit = false;

    while let Some(node) = heap.pop() {
        global_lb = global_lb.max(node.bound);
        stats.bound_trace.push(global_lb);

        if let Some((inc, _)) = &incumbent {
            let gap = (*inc - global_lb) / T::one().max(inc.abs());
            if gap <= cfg.mip_gap {
                break;
            }
            if node.bound >= *inc - T::of(1e-12) * (T::one() + inc.abs()) {
                continue;
            }
        }
        if let Some(limit) = cfg.node_limit {
            if stats.nodes >= limit {
                hit_limit = true;
                break;
            }
        }
        if let Some(limit) = cfg.time_limit {
            if started.elapsed().as_secs_f64() > limit {
                hit_limit = true;
                break;
            }
        }

        let overrides: Vec<(usize, T, T)> = node
            .fixes
            .iter()
            .map(|&(j, v)| {
                let x = T::of(v as f64);
                (j, x, x)
            })
            .collect();
        let lp = solver.solve_with_overrides(&overrides)?;
        stats.nodes += 1;
        stats.simplex_iterations += lp.iterations;
        match lp.status {
            LpStatus::Infeasible => continue,
            LpStatus::Unbounded => {
                // binaries are bounded, so a ray lives in the continuous part
                stats.unbounded_ray = lp.ray;
                return Ok(Solution {
                    status: SolveStatus::Unbounded,
                    primal: Vec::new(),
                    objective: T::neg_infinity(),
                    duals: Vec::new(),
                    gap: T::zero(),
                    stats,
                });
            }
            LpStatus::Optimal => {}
        }
        if let Some((inc, _)) = &incumbent {
            if lp.objective >= *inc - T::of(1e-12) * (T::one() + inc.abs()) {
                continue;
            }
        }

        // most fractional branching, ties to the lowest variable index
        let mut branch: Option<(usize, T)> = None;
        for &j in &binaries {
            let x = lp.x[j];
            let frac_dist = (x - x.round()).abs();
            if frac_dist <= int_tol {
                continue;
            }
            let score = (x - x.floor() - T::of(0.5)).abs();
            match branch {
                Some((_, best)) if score >= best => {}
                _ => branch = Some((j, score)),
            }
        }
        match branch {
            None => {
                // integral: candidate incumbent
                let better = match &incumbent {
                    Some((inc, _)) => lp.objective < *inc,
                    None => true,
                };
                if better {
                    stats.incumbent_trace.push(lp.objective);
                    incumbent = Some((lp.objective, lp.x));
                }
            }
            Some((j, _)) => {
                for v in [0u8, 1u8] {
                    let mut fixes = node.fixes.clone();
                    fixes.push((j, v));
                    heap.push(Node {
                        bound: lp.objective,
                        id: next_id,
                        fixes,
                    });
                    next_id += 1;
                }
            }
        }
    }

    let Some((inc_obj, inc_x)) = incumbent else {
        return Ok(Solution {
            status: if hit_limit {
                SolveStatus::GapLimit
            } else {
                SolveStatus::Infeasible
            },
            primal: Vec::new(),
            objective: T::infinity(),
            duals: Vec::new(),
            gap: T::infinity(),
            stats,
        });
    };

    if heap.is_empty() && !hit_limit {
        global_lb = inc_obj;
    }
    let gap = ((inc_obj - global_lb) / T::one().max(inc_obj.abs())).max(T::zero());

    // duals for the LP with integers fixed at their solution values
    let polish_overrides: Vec<(usize, T, T)> = binaries
        .iter()
        .map(|&j| {
            let v = inc_x[j].round();
            (j, v, v)
        })
        .collect();
    let polished = solver.solve_with_overrides(&polish_overrides)?;
    stats.simplex_iterations += polished.iterations;
    if polished.status != LpStatus::Optimal {
        return Err(SolveError::Numerical(
            "incumbent LP re-solve with fixed integers did not reproduce a feasible point".into(),
        ));
    }
    if (polished.objective - inc_obj).abs() > T::of(1e-6) * (T::one() + inc_obj.abs()) {
        return Err(SolveError::Numerical(format!(
            "incumbent objective {} not reproduced by fixed-integer LP ({})",
            inc_obj, polished.objective
        )));
    }
    let report = check::check_primal(model, &polished.x, cfg.feasibility_tolerance);
    if !report.rows_and_bounds_ok(cfg.feasibility_tolerance)
        || report.max_integrality_violation > int_tol
    {
        return Err(SolveError::Numerical(format!(
            "solution failed residual re-check: rows {}, bounds {}, integrality {}",
            report.max_row_violation, report.max_bound_violation, report.max_integrality_violation
        )));
    }
    stats.dual_objective = Some(check::dual_objective(model, &polished.duals));

    Ok(Solution {
        status: if hit_limit && gap > cfg.mip_gap {
            SolveStatus::GapLimit
        } else {
            SolveStatus::Optimal
        },
        primal: polished.x,
        objective: polished.objective,
        duals: polished.duals,
        gap,
        stats,
    })
}
