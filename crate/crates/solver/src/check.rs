//! Independent residual pass over a candidate solution and the Lagrangian
//! dual bound used for the weak-duality check. Works directly off the model
//! rows, sharing nothing with the simplex internals.

use gtep_milp::{Integrality, MilpModel, RowSense, Scalar};

/// Worst-case violations of a primal point against a model.
#[derive(Clone, Copy, Debug)]
pub struct ResidualReport<T> {
    pub max_row_violation: T,
    pub max_bound_violation: T,
    pub max_integrality_violation: T,
    pub objective: T,
}

impl<T: Scalar> ResidualReport<T> {
    /// Rows and bounds within tolerance (integrality judged separately).
    pub fn rows_and_bounds_ok(&self, tol: T) -> bool {
        self.max_row_violation <= tol * T::of(10.0)
            && self.max_bound_violation <= tol * T::of(10.0)
    }
}

/// Evaluate every row and bound of `model` at `primal`.
pub fn check_primal<T: Scalar>(model: &MilpModel<T>, primal: &[T], _tol: T) -> ResidualReport<T> {
    let mut max_row = T::zero();
    let mut max_bound = T::zero();
    let mut max_int = T::zero();
    for r in model.row_ids() {
        let act = model.eval_row(r, primal);
        let rhs = model.row_rhs(r);
        let scale = T::one() + rhs.abs();
        let viol = match model.row_sense(r) {
            RowSense::Le => (act - rhs) / scale,
            RowSense::Ge => (rhs - act) / scale,
            RowSense::Eq => (act - rhs).abs() / scale,
        };
        if viol > max_row {
            max_row = viol;
        }
    }
    for v in model.var_ids() {
        let x = primal[v.index()];
        let (lo, hi) = model.bounds(v);
        if lo > T::neg_infinity() {
            let viol = (lo - x) / (T::one() + lo.abs());
            if viol > max_bound {
                max_bound = viol;
            }
        }
        if hi < T::infinity() {
            let viol = (x - hi) / (T::one() + hi.abs());
            if viol > max_bound {
                max_bound = viol;
            }
        }
        if model.integrality(v) == Integrality::Binary {
            let frac = (x - x.round()).abs();
            if frac > max_int {
                max_int = frac;
            }
        }
    }
    ResidualReport {
        max_row_violation: max_row,
        max_bound_violation: max_bound,
        max_integrality_violation: max_int,
        objective: model.eval_objective(primal),
    }
}

/// Lagrangian dual bound for row multipliers `y`: relaxing every row with
/// its multiplier and optimizing each variable over its box gives
/// `y·b + Σ_j min(d_j lo_j, d_j hi_j)` with `d_j = c_j − y·A_j`, a valid
/// lower bound on the optimum for any `y` with admissible signs
/// (`y_i ≤ 0` on ≤ rows, `y_i ≥ 0` on ≥ rows). Inadmissible signs or an
/// unbounded inner term yield `-inf`, which keeps the bound valid.
pub fn dual_objective<T: Scalar>(model: &MilpModel<T>, duals: &[T]) -> T {
    let mut d: Vec<T> = model.var_ids().map(|v| model.obj_coeff(v)).collect();
    let mut acc = model.obj_offset();
    for r in model.row_ids() {
        let y = duals[r.index()];
        // sign admissibility for inequality rows
        let slack_term_ok = match model.row_sense(r) {
            RowSense::Le => y <= T::of(1e-9),
            RowSense::Ge => y >= T::of(-1e-9),
            RowSense::Eq => true,
        };
        if !slack_term_ok {
            return T::neg_infinity();
        }
        acc = acc + y * model.row_rhs(r);
        for &(v, a) in model.row_terms(r) {
            d[v.index()] = d[v.index()] - y * a;
        }
    }
    for v in model.var_ids() {
        let dj = d[v.index()];
        let (lo, hi) = model.bounds(v);
        let term = if dj > T::of(1e-12) {
            dj * lo
        } else if dj < T::of(-1e-12) {
            dj * hi
        } else {
            T::zero()
        };
        if term == T::neg_infinity() || term.is_nan() {
            return T::neg_infinity();
        }
        acc = acc + term;
    }
    acc
}
