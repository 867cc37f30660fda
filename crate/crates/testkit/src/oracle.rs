//! Naive full-tableau two-phase simplex used as an independent oracle for
//! the revised-simplex implementation. Every variable is split into a
//! difference of nonnegatives, bounds become explicit rows, and Bland's
//! rule is used throughout, trading speed for guaranteed termination and
//! an implementation that shares nothing with the code under test.

use gtep_milp::{MilpModel, RowSense};

const EPS: f64 = 1e-9;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TableauStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct TableauOutcome {
    pub status: TableauStatus,
    pub objective: f64,
    pub x: Vec<f64>,
}

/// Solve the LP relaxation of `model` by the textbook tableau method.
pub fn solve_tableau(model: &MilpModel<f64>) -> TableauOutcome {
    let n = model.num_vars();

    // rows as (coeffs over split vars, sense, rhs)
    struct RawRow {
        terms: Vec<(usize, f64)>, // over original var indices
        sense: RowSense,
        rhs: f64,
    }
    let mut raw: Vec<RawRow> = Vec::new();
    for r in model.row_ids() {
        raw.push(RawRow {
            terms: model
                .row_terms(r)
                .iter()
                .map(|&(v, a)| (v.index(), a))
                .collect(),
            sense: model.row_sense(r),
            rhs: model.row_rhs(r),
        });
    }
    for v in model.var_ids() {
        let (lo, hi) = model.bounds(v);
        if lo.is_finite() {
            raw.push(RawRow {
                terms: vec![(v.index(), 1.0)],
                sense: RowSense::Ge,
                rhs: lo,
            });
        }
        if hi.is_finite() {
            raw.push(RawRow {
                terms: vec![(v.index(), 1.0)],
                sense: RowSense::Le,
                rhs: hi,
            });
        }
    }

    let m = raw.len();
    let n_split = 2 * n; // x_j = plus_j - minus_j
    // columns: [split vars | slacks/surplus (one per inequality) | artificials (one per row)]
    let num_slack = raw
        .iter()
        .filter(|r| r.sense != RowSense::Eq)
        .count();
    let total = n_split + num_slack + m;
    let width = total + 1; // + rhs column
    let mut t = vec![0.0f64; (m + 1) * width]; // last row = cost row
    let mut basis = vec![0usize; m];

    let mut slack_at = n_split;
    for (i, row) in raw.iter().enumerate() {
        let flip = row.rhs < 0.0;
        let sgn = if flip { -1.0 } else { 1.0 };
        for &(j, a) in &row.terms {
            t[i * width + 2 * j] += sgn * a;
            t[i * width + 2 * j + 1] -= sgn * a;
        }
        t[i * width + total] = sgn * row.rhs;
        let eff_sense = if flip {
            match row.sense {
                RowSense::Le => RowSense::Ge,
                RowSense::Ge => RowSense::Le,
                RowSense::Eq => RowSense::Eq,
            }
        } else {
            row.sense
        };
        match eff_sense {
            RowSense::Le => {
                t[i * width + slack_at] = 1.0;
                slack_at += 1;
            }
            RowSense::Ge => {
                t[i * width + slack_at] = -1.0;
                slack_at += 1;
            }
            RowSense::Eq => {}
        }
        let art = n_split + num_slack + i;
        t[i * width + art] = 1.0;
        basis[i] = art;
    }

    // phase-1 cost row: minimize sum of artificials; with the artificial
    // basis the reduced-cost row is -sum of constraint rows
    for j in 0..width {
        let mut s = 0.0;
        for i in 0..m {
            s += t[i * width + j];
        }
        t[m * width + j] = -s;
    }
    for i in 0..m {
        let art = n_split + num_slack + i;
        t[m * width + art] = 0.0;
    }

    let art_start = n_split + num_slack;
    if run(&mut t, &mut basis, m, width, total, art_start, true) == TableauStatus::Unbounded {
        // phase 1 is bounded below by zero; numerical junk
        return TableauOutcome {
            status: TableauStatus::Infeasible,
            objective: f64::INFINITY,
            x: vec![],
        };
    }
    let phase1 = -t[m * width + total];
    if phase1 > 1e-7 {
        return TableauOutcome {
            status: TableauStatus::Infeasible,
            objective: f64::INFINITY,
            x: vec![],
        };
    }

    // phase-2 cost row from the real objective, eliminated over the basis
    for j in 0..width {
        t[m * width + j] = 0.0;
    }
    for v in model.var_ids() {
        let c = model.obj_coeff(v);
        t[m * width + 2 * v.index()] = c;
        t[m * width + 2 * v.index() + 1] = -c;
    }
    for i in 0..m {
        let cb = t[m * width + basis[i]];
        if cb != 0.0 {
            for j in 0..width {
                t[m * width + j] -= cb * t[i * width + j];
            }
        }
    }

    let status = run(&mut t, &mut basis, m, width, total, art_start, false);
    if status == TableauStatus::Unbounded {
        return TableauOutcome {
            status,
            objective: f64::NEG_INFINITY,
            x: vec![],
        };
    }

    let mut split = vec![0.0f64; n_split];
    for i in 0..m {
        if basis[i] < n_split {
            split[basis[i]] = t[i * width + total];
        }
    }
    let x: Vec<f64> = (0..n).map(|j| split[2 * j] - split[2 * j + 1]).collect();
    let objective = model.eval_objective(&x);
    TableauOutcome {
        status: TableauStatus::Optimal,
        objective,
        x,
    }
}

/// Bland-rule tableau iterations; artificial columns never re-enter.
fn run(
    t: &mut [f64],
    basis: &mut [usize],
    m: usize,
    width: usize,
    total: usize,
    art_start: usize,
    phase1: bool,
) -> TableauStatus {
    loop {
        // entering: lowest-index column with negative reduced cost
        let limit = if phase1 { total } else { art_start };
        let mut q = None;
        for j in 0..limit {
            if t[m * width + j] < -EPS {
                q = Some(j);
                break;
            }
        }
        let Some(q) = q else {
            return TableauStatus::Optimal;
        };
        // leaving: min ratio, ties to the lowest basis variable index
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[i * width + q];
            if a > EPS {
                let ratio = t[i * width + total] / a;
                match leave {
                    Some((bi, best)) => {
                        if ratio < best - EPS
                            || (ratio < best + EPS && basis[i] < basis[bi])
                        {
                            leave = Some((i, ratio));
                        }
                    }
                    None => leave = Some((i, ratio)),
                }
            }
        }
        let Some((r, _)) = leave else {
            return TableauStatus::Unbounded;
        };
        // pivot on (r, q)
        let piv = t[r * width + q];
        for j in 0..width {
            t[r * width + j] /= piv;
        }
        for i in 0..=m {
            if i == r {
                continue;
            }
            let f = t[i * width + q];
            if f != 0.0 {
                for j in 0..width {
                    t[i * width + j] -= f * t[r * width + j];
                }
            }
        }
        basis[r] = q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gtep_milp::{Integrality, MilpModel, RowSense};

    #[test]
    fn min_x_with_floor() {
        let mut m: MilpModel<f64> = MilpModel::new("t");
        let x = m
            .add_variable("x", 0.0, f64::INFINITY, Integrality::Continuous)
            .unwrap();
        m.set_obj_coeff(x, 1.0).unwrap();
        m.add_constraint("floor", &[(x, 1.0)], RowSense::Ge, 3.0).unwrap();
        let out = solve_tableau(&m);
        assert_eq!(out.status, TableauStatus::Optimal);
        assert!((out.objective - 3.0).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasible_pair() {
        let mut m: MilpModel<f64> = MilpModel::new("t");
        let x = m
            .add_variable("x", 0.0, f64::INFINITY, Integrality::Continuous)
            .unwrap();
        m.add_constraint("lo", &[(x, 1.0)], RowSense::Ge, 2.0).unwrap();
        m.add_constraint("hi", &[(x, 1.0)], RowSense::Le, 1.0).unwrap();
        assert_eq!(solve_tableau(&m).status, TableauStatus::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let mut m: MilpModel<f64> = MilpModel::new("t");
        let x = m
            .add_variable("x", 0.0, f64::INFINITY, Integrality::Continuous)
            .unwrap();
        m.set_obj_coeff(x, -1.0).unwrap();
        assert_eq!(solve_tableau(&m).status, TableauStatus::Unbounded);
    }

    #[test]
    fn negative_lower_bounds_handled() {
        let mut m: MilpModel<f64> = MilpModel::new("t");
        let x = m.add_variable("x", -5.0, 5.0, Integrality::Continuous).unwrap();
        let y = m.add_variable("y", -3.0, f64::INFINITY, Integrality::Continuous).unwrap();
        m.set_obj_coeff(x, 1.0).unwrap();
        m.set_obj_coeff(y, 2.0).unwrap();
        m.add_constraint("link", &[(x, 1.0), (y, 1.0)], RowSense::Ge, -6.0)
            .unwrap();
        let out = solve_tableau(&m);
        assert_eq!(out.status, TableauStatus::Optimal);
        // optimum at x = -3 (y's own floor binds): cost -3 + 2*(-3) = -9
        assert!((out.objective - (-9.0)).abs() < 1e-8, "{}", out.objective);
    }
}
