//! Branch-and-bound behavior: enumeration agreement, trace monotonicity,
//! limits, and the 3-hour commitment toy.

use gtep_milp::{Integrality, MilpModel, RowSense, VarId};
use gtep_solver::{solve_lp, solve_mip, SolveConfig, SolveStatus};

fn cfg() -> SolveConfig<f64> {
    SolveConfig::tight()
}

/// Tiny expansion toy: two candidate plants, demand row, build costs.
fn two_project_toy() -> (MilpModel<f64>, [VarId; 2]) {
    let mut m = MilpModel::new("2proj");
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
    m.add_constraint("gate[a]", &[(ga, 1.0), (xa, -60.0)], RowSense::Le, 0.0)
        .unwrap();
    m.add_constraint("gate[b]", &[(gb, 1.0), (xb, -80.0)], RowSense::Le, 0.0)
        .unwrap();
    m.add_constraint(
        "balance",
        &[(ga, 1.0), (gb, 1.0), (d, 1.0)],
        RowSense::Eq,
        100.0,
    )
    .unwrap();
    m.seal();
    (m, [xa, xb])
}

fn enumerate_binaries(model: &MilpModel<f64>, binaries: &[VarId]) -> f64 {
    let mut best = f64::INFINITY;
    for mask in 0..(1u32 << binaries.len()) {
        let mut fixed = model.clone();
        for (k, &v) in binaries.iter().enumerate() {
            let val = ((mask >> k) & 1) as f64;
            fixed.set_bounds(v, val, val).unwrap();
        }
        let sol = solve_lp(&fixed, &cfg()).unwrap();
        if sol.status == SolveStatus::Optimal && sol.objective < best {
            best = sol.objective;
        }
    }
    best
}

#[test]
fn two_project_toy_matches_enumeration() {
    let (m, bins) = two_project_toy();
    let mip = solve_mip(&m, &cfg()).unwrap();
    assert_eq!(mip.status, SolveStatus::Optimal);
    let best = enumerate_binaries(&m, &bins);
    assert!(
        (mip.objective - best).abs() <= 1e-6 * (1.0 + best.abs()),
        "mip {} enum {}",
        mip.objective,
        best
    );
}

#[test]
fn fixed_binaries_reduce_to_lp() {
    let (mut m, bins) = two_project_toy();
    for b in bins {
        m.set_bounds(b, 1.0, 1.0).unwrap();
    }
    let mip = solve_mip(&m, &cfg()).unwrap();
    let lp = solve_lp(&m, &cfg()).unwrap();
    assert!((mip.objective - lp.objective).abs() < 1e-9);
    assert_eq!(mip.stats.nodes, 1);
}

#[test]
fn min_capacity_knapsack_selects_cheapest_pair() {
    // at least 100 MW from {50, 60, 70} with build costs; verified against
    // enumeration of all 2^3 vectors
    let mut m = MilpModel::new("knap");
    let caps = [50.0, 60.0, 70.0];
    let costs = [120.0, 130.0, 260.0];
    let xs: Vec<VarId> = (0..3).map(|i| m.add_binary(&format!("x[{}]", i)).unwrap()).collect();
    for (i, &x) in xs.iter().enumerate() {
        m.set_obj_coeff(x, costs[i]).unwrap();
    }
    let terms: Vec<_> = xs.iter().zip(caps).map(|(&x, c)| (x, c)).collect();
    m.add_constraint("mincap", &terms, RowSense::Ge, 100.0).unwrap();
    m.seal();
    let mip = solve_mip(&m, &cfg()).unwrap();
    let best = enumerate_binaries(&m, &xs);
    assert!((mip.objective - best).abs() < 1e-9);
    // cheapest pair is {50, 60} at 250
    assert!((mip.objective - 250.0).abs() < 1e-9);
    assert!((mip.value(xs[0]) - 1.0).abs() < 1e-9);
    assert!((mip.value(xs[1]) - 1.0).abs() < 1e-9);
    assert!(mip.value(xs[2]).abs() < 1e-9);
}

#[test]
fn infeasible_exclusivity_detected() {
    let mut m = MilpModel::new("excl");
    let xa = m.add_binary("x[a]").unwrap();
    let xb = m.add_binary("x[b]").unwrap();
    m.set_bounds(xa, 1.0, 1.0).unwrap();
    m.set_bounds(xb, 1.0, 1.0).unwrap();
    m.add_constraint("excl", &[(xa, 1.0), (xb, 1.0)], RowSense::Le, 1.0)
        .unwrap();
    m.seal();
    let mip = solve_mip(&m, &cfg()).unwrap();
    assert_eq!(mip.status, SolveStatus::Infeasible);
}

#[test]
fn traces_are_monotone() {
    let (m, _) = two_project_toy();
    let mip = solve_mip(&m, &cfg()).unwrap();
    let inc = &mip.stats.incumbent_trace;
    assert!(inc.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    let lb = &mip.stats.bound_trace;
    assert!(lb.windows(2).all(|w| w[1] >= w[0] - 1e-12));
}

#[test]
fn node_limit_reports_gap() {
    // force an early stop; with node_limit 0 no node is ever processed
    let (m, _) = two_project_toy();
    let mut c = cfg();
    c.node_limit = Some(0);
    let mip = solve_mip(&m, &c).unwrap();
    assert_eq!(mip.status, SolveStatus::GapLimit);
    assert!(mip.gap.is_infinite());
}

/// Three-hour commitment toy: γ binary per hour, generation between
/// `g_min γ` and `g_max γ`, startup `st ≥ γ_h − γ_{h−1}` from a cold start,
/// hourly demand [30, 0, 30]. With the startup cost dominating, staying on
/// through the idle hour beats cycling, and the optimum matches
/// enumeration over all 2³ commitment patterns.
#[test]
fn three_hour_commitment_stays_on() {
    let (g_min, g_max) = (10.0, 50.0);
    let (op_cost, startup_cost) = (1.0, 500.0);
    let demand = [30.0, 0.0, 30.0];

    let build = |pattern: Option<[u8; 3]>| -> MilpModel<f64> {
        let mut m = MilpModel::new("uc3");
        let gam: Vec<VarId> = (0..3).map(|h| m.add_binary(&format!("gam[{}]", h)).unwrap()).collect();
        let g: Vec<VarId> = (0..3)
            .map(|h| m.add_variable(&format!("g[{}]", h), 0.0, g_max, Integrality::Continuous).unwrap())
            .collect();
        let st: Vec<VarId> = (0..3)
            .map(|h| m.add_variable(&format!("st[{}]", h), 0.0, 1.0, Integrality::Continuous).unwrap())
            .collect();
        for h in 0..3 {
            m.set_obj_coeff(g[h], op_cost).unwrap();
            m.set_obj_coeff(st[h], startup_cost).unwrap();
            m.add_constraint(&format!("lo[{}]", h), &[(g[h], 1.0), (gam[h], -g_min)], RowSense::Ge, 0.0)
                .unwrap();
            m.add_constraint(&format!("hi[{}]", h), &[(g[h], 1.0), (gam[h], -g_max)], RowSense::Le, 0.0)
                .unwrap();
            m.add_constraint(&format!("met[{}]", h), &[(g[h], 1.0)], RowSense::Ge, demand[h])
                .unwrap();
            // cold start: γ_{-1} = 0
            let mut terms = vec![(st[h], 1.0), (gam[h], -1.0)];
            if h > 0 {
                terms.push((gam[h - 1], 1.0));
            }
            m.add_constraint(&format!("start[{}]", h), &terms, RowSense::Ge, 0.0)
                .unwrap();
        }
        if let Some(p) = pattern {
            for h in 0..3 {
                m.set_bounds(gam[h], p[h] as f64, p[h] as f64).unwrap();
            }
        }
        m.seal();
        m
    };

    let mip = solve_mip(&build(None), &cfg()).unwrap();
    assert_eq!(mip.status, SolveStatus::Optimal);

    let mut best = f64::INFINITY;
    let mut best_pattern = [9u8; 3];
    for mask in 0..8u8 {
        let p = [(mask & 1), (mask >> 1) & 1, (mask >> 2) & 1];
        let lp = solve_lp(&build(Some(p)), &cfg()).unwrap();
        if lp.status == SolveStatus::Optimal && lp.objective < best {
            best = lp.objective;
            best_pattern = p;
        }
    }
    assert_eq!(best_pattern, [1, 1, 1], "contiguous block expected");
    assert!((mip.objective - best).abs() <= 1e-6 * (1.0 + best.abs()));

    // exactly one startup in the MIP solution
    let m = build(None);
    let startups: f64 = (0..3)
        .map(|h| mip.value(m.var_id(&format!("st[{}]", h)).unwrap()))
        .sum();
    assert!((startups - 1.0).abs() < 1e-6, "startups {}", startups);
}
