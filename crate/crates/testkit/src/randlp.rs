//! Random feasible, bounded LP instances: a feasible point is drawn first
//! and every row's right-hand side is placed relative to its activity at
//! that point, so feasibility holds by construction; finite variable boxes
//! keep the problem bounded.

use gtep_milp::{Integrality, MilpModel, RowSense};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_feasible_lp(seed: u64, max_rows: usize, max_cols: usize) -> MilpModel<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_cols.max(2));
    let m = rng.gen_range(1..=max_rows.max(1));
    let mut model = MilpModel::new(&format!("RANDLP{}", seed));
    let mut ids = Vec::with_capacity(n);
    let mut x0 = Vec::with_capacity(n);
    for j in 0..n {
        let hi = rng.gen_range(1.0..10.0);
        let id = model
            .add_variable(&format!("x{}", j), 0.0, hi, Integrality::Continuous)
            .unwrap();
        model.set_obj_coeff(id, rng.gen_range(-10.0..10.0)).unwrap();
        x0.push(rng.gen_range(0.0..hi));
        ids.push(id);
    }
    for i in 0..m {
        let nnz = rng.gen_range(1..=n.min(6));
        let mut terms = Vec::with_capacity(nnz);
        let mut act = 0.0;
        for _ in 0..nnz {
            let j = rng.gen_range(0..n);
            let a = rng.gen_range(-5.0..5.0);
            terms.push((ids[j], a));
            act += a * x0[j];
        }
        let (sense, rhs) = match rng.gen_range(0..4) {
            0 => (RowSense::Eq, act),
            1 => (RowSense::Ge, act - rng.gen_range(0.0..5.0)),
            _ => (RowSense::Le, act + rng.gen_range(0.0..5.0)),
        };
        model
            .add_constraint(&format!("r{}", i), &terms, sense, rhs)
            .unwrap();
    }
    model.seal();
    model
}
