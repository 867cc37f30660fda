//! Bounded-variable revised simplex with a dense LU-factored basis and
//! product-form eta updates between refactorizations.
//!
//! Standard computational form: every constraint row gets a slack with
//! sense-dependent bounds so all rows are equalities; a phase-1 crash
//! starts from the slack basis and adds artificials only for rows whose
//! slack cannot absorb the initial residual. Bland's rule engages after a
//! run of consecutive degenerate pivots and disengages on progress.

use gtep_milp::{MilpModel, RowSense, Scalar};

use crate::check;
use crate::config::SolveConfig;
use crate::lu::{DenseLu, Eta};
use crate::solution::{SolveError, SolveStats, SolveStatus, Solution};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
enum Stat {
    Basic,
    AtLo,
    AtHi,
    Free,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub(crate) enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Raw LP outcome over the structural variables and original rows.
pub(crate) struct LpOutcome<T> {
    pub status: LpStatus,
    pub x: Vec<T>,
    pub objective: T,
    pub duals: Vec<T>,
    pub iterations: u64,
    pub ray: Option<Vec<T>>,
    pub farkas: Option<Vec<T>>,
}

/// Reusable simplex over one model: the standard-form template is built
/// once, then any number of solves can run with per-call bound overrides
/// (used by branch and bound and by enumeration oracles).
pub struct SimplexSolver<T> {
    m: usize,
    n: usize,
    cols: Vec<Vec<(usize, T)>>,
    b: Vec<T>,
    slack_lo: Vec<T>,
    slack_hi: Vec<T>,
    cost: Vec<T>,
    lo0: Vec<T>,
    hi0: Vec<T>,
    kept: Vec<usize>,
    rows_orig: usize,
    offset: T,
    infeasible_empty_row: Option<usize>,
    cfg: SolveConfig<T>,
}

impl<T: Scalar> SimplexSolver<T> {
    /// Build the standard-form template. The only presolve is removing
    /// empty rows (checking their trivial satisfiability) — variables with
    /// equal bounds are simply never eligible to enter the basis.
    pub fn new(model: &MilpModel<T>, cfg: SolveConfig<T>) -> Result<Self, SolveError> {
        if !model.is_sealed() {
            return Err(SolveError::NotSealed);
        }
        let n = model.num_vars();
        let mut kept = Vec::new();
        let mut infeasible_empty_row = None;
        let mut cols: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        let mut b = Vec::new();
        let mut slack_lo = Vec::new();
        let mut slack_hi = Vec::new();
        for r in model.row_ids() {
            if model.row_terms(r).is_empty() {
                let rhs = model.row_rhs(r);
                let ok = match model.row_sense(r) {
                    RowSense::Le => T::zero() <= rhs + cfg.feasibility_tolerance,
                    RowSense::Ge => T::zero() >= rhs - cfg.feasibility_tolerance,
                    RowSense::Eq => rhs.abs() <= cfg.feasibility_tolerance,
                };
                if !ok && infeasible_empty_row.is_none() {
                    infeasible_empty_row = Some(r.index());
                }
                continue;
            }
            let i = kept.len();
            kept.push(r.index());
            b.push(model.row_rhs(r));
            let (slo, shi) = match model.row_sense(r) {
                RowSense::Le => (T::zero(), T::infinity()),
                RowSense::Ge => (T::neg_infinity(), T::zero()),
                RowSense::Eq => (T::zero(), T::zero()),
            };
            slack_lo.push(slo);
            slack_hi.push(shi);
            for &(v, a) in model.row_terms(r) {
                cols[v.index()].push((i, a));
            }
        }
        let m = kept.len();
        let mut cost = Vec::with_capacity(n);
        let mut lo0 = Vec::with_capacity(n);
        let mut hi0 = Vec::with_capacity(n);
        for v in model.var_ids() {
            cost.push(model.obj_coeff(v));
            let (lo, hi) = model.bounds(v);
            lo0.push(lo);
            hi0.push(hi);
        }
        Ok(Self {
            m,
            n,
            cols,
            b,
            slack_lo,
            slack_hi,
            cost,
            lo0,
            hi0,
            kept,
            rows_orig: model.num_rows(),
            offset: model.obj_offset(),
            infeasible_empty_row,
            cfg,
        })
    }

    pub fn num_structural(&self) -> usize {
        self.n
    }

    /// Solve the LP relaxation with variable-bound overrides, producing a
    /// fully checked [`Solution`]. `model` must be the model this solver
    /// was built from; it is used for the independent residual pass, so
    /// overrides must stay inside the model's own bounds (fixing a binary
    /// to 0 or 1 qualifies).
    pub fn lp_with_bounds(
        &self,
        model: &MilpModel<T>,
        overrides: &[(gtep_milp::VarId, T, T)],
    ) -> Result<Solution<T>, SolveError> {
        let raw: Vec<(usize, T, T)> = overrides
            .iter()
            .map(|&(v, lo, hi)| (v.index(), lo, hi))
            .collect();
        let out = self.solve_with_overrides(&raw)?;
        finish_lp(model, &self.cfg, out)
    }

    /// Solve the LP relaxation with per-variable bound overrides
    /// `(variable index, lo, hi)`. Integrality marks are ignored here.
    pub(crate) fn solve_with_overrides(
        &self,
        overrides: &[(usize, T, T)],
    ) -> Result<LpOutcome<T>, SolveError> {
        if let Some(row) = self.infeasible_empty_row {
            let mut farkas = vec![T::zero(); self.rows_orig];
            farkas[row] = T::one();
            return Ok(LpOutcome {
                status: LpStatus::Infeasible,
                x: Vec::new(),
                objective: T::infinity(),
                duals: Vec::new(),
                iterations: 0,
                ray: None,
                farkas: Some(farkas),
            });
        }
        match self.attempt(overrides, false) {
            Err(SolveError::Numerical(_)) => self.attempt(overrides, true),
            other => other,
        }
    }

    fn attempt(&self, overrides: &[(usize, T, T)], force_bland: bool) -> Result<LpOutcome<T>, SolveError> {
        let mut w = Work::new(self, overrides, force_bland);
        w.run()
    }
}

struct Work<'a, T> {
    s: &'a SimplexSolver<T>,
    nc: usize,
    ns: usize,
    lo: Vec<T>,
    hi: Vec<T>,
    x: Vec<T>,
    stat: Vec<Stat>,
    basis: Vec<usize>,
    art_sign: Vec<T>,
    lu: Option<DenseLu<T>>,
    etas: Vec<Eta<T>>,
    bland: bool,
    force_bland: bool,
    degenerate_run: usize,
    iterations: u64,
    cost: Vec<T>,
}

enum PhaseEnd {
    Optimal,
    Unbounded { q: usize, sigma: f64 },
}

impl<'a, T: Scalar> Work<'a, T> {
    fn new(s: &'a SimplexSolver<T>, overrides: &[(usize, T, T)], force_bland: bool) -> Self {
        let (n, m) = (s.n, s.m);
        let ns = n + m;
        let nc = n + 2 * m;
        let mut lo = Vec::with_capacity(nc);
        let mut hi = Vec::with_capacity(nc);
        lo.extend_from_slice(&s.lo0);
        hi.extend_from_slice(&s.hi0);
        for &(j, l, h) in overrides {
            lo[j] = l;
            hi[j] = h;
        }
        lo.extend_from_slice(&s.slack_lo);
        hi.extend_from_slice(&s.slack_hi);
        lo.extend(std::iter::repeat(T::zero()).take(m));
        hi.extend(std::iter::repeat(T::zero()).take(m));
        Self {
            s,
            nc,
            ns,
            lo,
            hi,
            x: vec![T::zero(); nc],
            stat: vec![Stat::AtLo; nc],
            basis: Vec::with_capacity(m),
            art_sign: vec![T::one(); m],
            lu: None,
            etas: Vec::new(),
            bland: force_bland,
            force_bland,
            degenerate_run: 0,
            iterations: 0,
            cost: vec![T::zero(); nc],
        }
    }

    fn nonbasic_value(&self, j: usize) -> T {
        match self.stat[j] {
            Stat::AtLo => self.lo[j],
            Stat::AtHi => self.hi[j],
            Stat::Free => T::zero(),
            Stat::Basic => self.x[j],
        }
    }

    fn col_dot(&self, j: usize, y: &[T]) -> T {
        let n = self.s.n;
        if j < n {
            let mut acc = T::zero();
            for &(i, a) in &self.s.cols[j] {
                acc = acc + a * y[i];
            }
            acc
        } else if j < self.ns {
            y[j - n]
        } else {
            self.art_sign[j - self.ns] * y[j - self.ns]
        }
    }

    fn col_dense(&self, j: usize, out: &mut [T]) {
        for v in out.iter_mut() {
            *v = T::zero();
        }
        let n = self.s.n;
        if j < n {
            for &(i, a) in &self.s.cols[j] {
                out[i] = a;
            }
        } else if j < self.ns {
            out[j - n] = T::one();
        } else {
            out[j - self.ns] = self.art_sign[j - self.ns];
        }
    }

    fn ftran(&self, v: &mut [T]) {
        self.lu.as_ref().unwrap().solve(v);
        for e in &self.etas {
            e.apply(v);
        }
    }

    fn btran(&self, v: &mut [T]) {
        for e in self.etas.iter().rev() {
            e.apply_transposed(v);
        }
        self.lu.as_ref().unwrap().solve_t(v);
    }

    fn refactor(&mut self) -> Result<(), SolveError> {
        let m = self.s.m;
        let mut a = vec![T::zero(); m * m];
        let mut col = vec![T::zero(); m];
        for (p, &j) in self.basis.iter().enumerate() {
            self.col_dense(j, &mut col);
            for i in 0..m {
                a[i * m + p] = col[i];
            }
        }
        let lu = DenseLu::factor(m, a, T::of(1e-11))
            .ok_or_else(|| SolveError::Numerical("singular basis".into()))?;
        self.lu = Some(lu);
        self.etas.clear();
        self.recompute_basics();
        Ok(())
    }

    /// Fresh basic values from the factorization, killing accumulated drift.
    fn recompute_basics(&mut self) {
        let m = self.s.m;
        let mut rhs: Vec<T> = self.s.b.clone();
        for j in 0..self.nc {
            if self.stat[j] == Stat::Basic {
                continue;
            }
            let v = self.nonbasic_value(j);
            self.x[j] = v;
            if v == T::zero() {
                continue;
            }
            let n = self.s.n;
            if j < n {
                for &(i, a) in &self.s.cols[j] {
                    rhs[i] = rhs[i] - a * v;
                }
            } else if j < self.ns {
                rhs[j - n] = rhs[j - n] - v;
            } else {
                rhs[j - self.ns] = rhs[j - self.ns] - self.art_sign[j - self.ns] * v;
            }
        }
        self.lu.as_ref().unwrap().solve(&mut rhs);
        for i in 0..m {
            self.x[self.basis[i]] = rhs[i];
        }
    }

    /// Slack basis where feasible, artificials elsewhere.
    fn crash(&mut self) {
        let (n, m) = (self.s.n, self.s.m);
        for j in 0..self.nc {
            self.stat[j] = if self.lo[j] > T::neg_infinity() {
                Stat::AtLo
            } else if self.hi[j] < T::infinity() {
                Stat::AtHi
            } else {
                Stat::Free
            };
            self.x[j] = self.nonbasic_value(j);
        }
        let mut act = vec![T::zero(); m];
        for j in 0..n {
            let v = self.x[j];
            if v != T::zero() {
                for &(i, a) in &self.s.cols[j] {
                    act[i] = act[i] + a * v;
                }
            }
        }
        self.basis.clear();
        for i in 0..m {
            let r = self.s.b[i] - act[i];
            let slack = n + i;
            let art = self.ns + i;
            if r >= self.s.slack_lo[i] && r <= self.s.slack_hi[i] {
                self.basis.push(slack);
                self.stat[slack] = Stat::Basic;
                self.x[slack] = r;
                // artificial stays fixed at zero
                self.lo[art] = T::zero();
                self.hi[art] = T::zero();
            } else {
                self.art_sign[i] = if r >= T::zero() { T::one() } else { -T::one() };
                self.basis.push(art);
                self.stat[art] = Stat::Basic;
                self.x[art] = r.abs();
                self.lo[art] = T::zero();
                self.hi[art] = T::infinity();
            }
        }
    }

    fn iteration_limit(&self) -> u64 {
        50_000 + 100 * (self.s.m + self.s.n) as u64
    }

    fn feas_eps(&self, bound: T) -> T {
        self.s.cfg.feasibility_tolerance * (T::one() + bound.abs())
    }

    fn run_phase(&mut self) -> Result<PhaseEnd, SolveError> {
        let m = self.s.m;
        let opt_tol = self.s.cfg.optimality_tolerance;
        let mut y = vec![T::zero(); m];
        let mut w = vec![T::zero(); m];
        loop {
            self.iterations += 1;
            if self.iterations > self.iteration_limit() {
                return Err(SolveError::Numerical("simplex iteration limit".into()));
            }
            if self.etas.len() >= self.s.cfg.refactor_every {
                self.refactor()?;
            }
            for i in 0..m {
                y[i] = self.cost[self.basis[i]];
            }
            self.btran(&mut y);

            // pricing over structural and slack columns
            let mut enter: Option<(usize, f64, T)> = None;
            for j in 0..self.ns {
                if self.stat[j] == Stat::Basic || self.lo[j] == self.hi[j] {
                    continue;
                }
                let d = self.cost[j] - self.col_dot(j, &y);
                let dtol = opt_tol * (T::one() + self.cost[j].abs());
                let cand = match self.stat[j] {
                    Stat::AtLo => (d < -dtol).then_some((1.0, -d)),
                    Stat::AtHi => (d > dtol).then_some((-1.0, d)),
                    Stat::Free => {
                        if d < -dtol {
                            Some((1.0, -d))
                        } else if d > dtol {
                            Some((-1.0, d))
                        } else {
                            None
                        }
                    }
                    Stat::Basic => None,
                };
                if let Some((dir, viol)) = cand {
                    if self.bland {
                        enter = Some((j, dir, viol));
                        break;
                    }
                    match enter {
                        Some((_, _, best)) if viol <= best => {}
                        _ => enter = Some((j, dir, viol)),
                    }
                }
            }
            let Some((q, dir, _)) = enter else {
                return Ok(PhaseEnd::Optimal);
            };
            let sigma = if dir > 0.0 { T::one() } else { -T::one() };

            self.col_dense(q, &mut w);
            self.ftran(&mut w);

            let range_q = self.hi[q] - self.lo[q];
            let pivot_skip = T::of(1e-9);

            // pass 1: tolerance-relaxed cap
            let mut t_cap = range_q; // may be +inf
            for i in 0..m {
                let wi = w[i];
                if wi.abs() <= pivot_skip {
                    continue;
                }
                let bi = self.basis[i];
                let delta = sigma * wi;
                let lim = if delta > T::zero() {
                    if self.lo[bi] == T::neg_infinity() {
                        continue;
                    }
                    (self.x[bi] - self.lo[bi] + self.feas_eps(self.lo[bi])) / delta
                } else {
                    if self.hi[bi] == T::infinity() {
                        continue;
                    }
                    (self.hi[bi] - self.x[bi] + self.feas_eps(self.hi[bi])) / -delta
                };
                let lim = lim.max(T::zero());
                if lim < t_cap {
                    t_cap = lim;
                }
            }

            if t_cap == T::infinity() {
                return Ok(PhaseEnd::Unbounded { q, sigma: dir });
            }

            // pass 2: among blockers within the cap, largest pivot wins
            let mut leave: Option<(usize, T, bool, T)> = None;
            for i in 0..m {
                let wi = w[i];
                if wi.abs() <= pivot_skip {
                    continue;
                }
                let bi = self.basis[i];
                let delta = sigma * wi;
                let (lim, hits_lower) = if delta > T::zero() {
                    if self.lo[bi] == T::neg_infinity() {
                        continue;
                    }
                    (((self.x[bi] - self.lo[bi]) / delta).max(T::zero()), true)
                } else {
                    if self.hi[bi] == T::infinity() {
                        continue;
                    }
                    (((self.hi[bi] - self.x[bi]) / -delta).max(T::zero()), false)
                };
                if lim <= t_cap {
                    let mag = wi.abs();
                    match leave {
                        Some((_, _, _, best)) if mag <= best => {}
                        _ => leave = Some((i, lim, hits_lower, mag)),
                    }
                }
            }

            match leave {
                None => {
                    // entering variable flips to its opposite bound
                    let t = range_q;
                    for i in 0..m {
                        let bi = self.basis[i];
                        self.x[bi] = self.x[bi] - sigma * t * w[i];
                    }
                    if sigma > T::zero() {
                        self.stat[q] = Stat::AtHi;
                        self.x[q] = self.hi[q];
                    } else {
                        self.stat[q] = Stat::AtLo;
                        self.x[q] = self.lo[q];
                    }
                    self.track_degeneracy(t);
                }
                Some((r, t, hits_lower, _)) => {
                    for i in 0..m {
                        let bi = self.basis[i];
                        self.x[bi] = self.x[bi] - sigma * t * w[i];
                    }
                    self.x[q] = self.nonbasic_value(q) + sigma * t;
                    let leaving = self.basis[r];
                    if hits_lower {
                        self.x[leaving] = self.lo[leaving];
                        self.stat[leaving] = Stat::AtLo;
                    } else {
                        self.x[leaving] = self.hi[leaving];
                        self.stat[leaving] = Stat::AtHi;
                    }
                    self.basis[r] = q;
                    self.stat[q] = Stat::Basic;
                    if w[r].abs() < T::of(1e-7) {
                        self.refactor()?;
                    } else {
                        self.etas.push(Eta::from_pivot_column(&w, r));
                    }
                    self.track_degeneracy(t);
                }
            }
        }
    }

    fn track_degeneracy(&mut self, t: T) {
        if t <= T::of(1e-10) {
            self.degenerate_run += 1;
            if self.degenerate_run > self.s.cfg.bland_after {
                self.bland = true;
            }
        } else {
            self.degenerate_run = 0;
            self.bland = self.force_bland;
        }
    }

    fn phase_costs(&mut self, phase1: bool) {
        for j in 0..self.nc {
            self.cost[j] = if phase1 {
                if j >= self.ns {
                    T::one()
                } else {
                    T::zero()
                }
            } else if j < self.s.n {
                self.s.cost[j]
            } else {
                T::zero()
            };
        }
    }

    fn duals(&mut self) -> Vec<T> {
        let m = self.s.m;
        let mut y = vec![T::zero(); m];
        for i in 0..m {
            y[i] = self.cost[self.basis[i]];
        }
        self.btran(&mut y);
        let mut out = vec![T::zero(); self.s.rows_orig];
        for (i, &orig) in self.s.kept.iter().enumerate() {
            out[orig] = y[i];
        }
        out
    }

    fn run(&mut self) -> Result<LpOutcome<T>, SolveError> {
        let s = self.s;
        if s.m == 0 {
            return self.trivial_no_rows();
        }
        self.crash();
        self.refactor()?;

        // phase 1: minimize total artificial mass
        self.phase_costs(true);
        match self.run_phase()? {
            PhaseEnd::Optimal => {}
            PhaseEnd::Unbounded { .. } => {
                return Err(SolveError::Numerical("phase-1 relaxation unbounded".into()))
            }
        }
        let b_scale = s
            .b
            .iter()
            .fold(T::one(), |acc, &v| if v.abs() > acc { v.abs() } else { acc });
        let z1: T = (self.ns..self.nc).map(|j| self.x[j]).sum();
        if z1 > s.cfg.feasibility_tolerance * b_scale * T::of(10.0) {
            let farkas = self.duals();
            return Ok(LpOutcome {
                status: LpStatus::Infeasible,
                x: Vec::new(),
                objective: T::infinity(),
                duals: Vec::new(),
                iterations: self.iterations,
                ray: None,
                farkas: Some(farkas),
            });
        }
        self.drive_out_artificials()?;
        for i in 0..s.m {
            let a = self.ns + i;
            self.lo[a] = T::zero();
            self.hi[a] = T::zero();
            if self.stat[a] != Stat::Basic {
                self.stat[a] = Stat::AtLo;
                self.x[a] = T::zero();
            }
        }

        // phase 2: the real objective
        self.phase_costs(false);
        self.degenerate_run = 0;
        self.bland = self.force_bland;
        let end = self.run_phase()?;
        self.refactor()?;

        match end {
            PhaseEnd::Unbounded { q, sigma } => {
                let mut w = vec![T::zero(); s.m];
                self.col_dense(q, &mut w);
                self.ftran(&mut w);
                let sig = T::of(sigma);
                let mut ray = vec![T::zero(); s.n];
                if q < s.n {
                    ray[q] = sig;
                }
                for (i, &bi) in self.basis.iter().enumerate() {
                    if bi < s.n {
                        ray[bi] = -sig * w[i];
                    }
                }
                Ok(LpOutcome {
                    status: LpStatus::Unbounded,
                    x: Vec::new(),
                    objective: T::neg_infinity(),
                    duals: Vec::new(),
                    iterations: self.iterations,
                    ray: Some(ray),
                    farkas: None,
                })
            }
            PhaseEnd::Optimal => {
                // bound sanity on the final basis
                for j in 0..self.nc {
                    let v = self.x[j];
                    let bad = (self.lo[j] > T::neg_infinity()
                        && v < self.lo[j] - self.feas_eps(self.lo[j]) * T::of(10.0))
                        || (self.hi[j] < T::infinity()
                            && v > self.hi[j] + self.feas_eps(self.hi[j]) * T::of(10.0));
                    if bad {
                        return Err(SolveError::Numerical(format!(
                            "final basis violates bounds at column {}",
                            j
                        )));
                    }
                }
                let duals = self.duals();
                let x: Vec<T> = self.x[..s.n].to_vec();
                let objective =
                    s.offset + x.iter().zip(&s.cost).map(|(&xi, &ci)| xi * ci).sum::<T>();
                Ok(LpOutcome {
                    status: LpStatus::Optimal,
                    x,
                    objective,
                    duals,
                    iterations: self.iterations,
                    ray: None,
                    farkas: None,
                })
            }
        }
    }

    /// No constraint rows: each variable sits at its cost-favorable bound.
    fn trivial_no_rows(&mut self) -> Result<LpOutcome<T>, SolveError> {
        let s = self.s;
        let mut x = vec![T::zero(); s.n];
        for j in 0..s.n {
            let c = s.cost[j];
            let v = if c > T::zero() {
                self.lo[j]
            } else if c < T::zero() {
                self.hi[j]
            } else if self.lo[j] > T::neg_infinity() {
                self.lo[j]
            } else if self.hi[j] < T::infinity() {
                self.hi[j]
            } else {
                T::zero()
            };
            if v.is_infinite() {
                let mut ray = vec![T::zero(); s.n];
                ray[j] = if v > T::zero() { T::one() } else { -T::one() };
                return Ok(LpOutcome {
                    status: LpStatus::Unbounded,
                    x: Vec::new(),
                    objective: T::neg_infinity(),
                    duals: Vec::new(),
                    iterations: 0,
                    ray: Some(ray),
                    farkas: None,
                });
            }
            x[j] = v;
        }
        let objective = s.offset + x.iter().zip(&s.cost).map(|(&xi, &ci)| xi * ci).sum::<T>();
        Ok(LpOutcome {
            status: LpStatus::Optimal,
            x,
            objective,
            duals: vec![T::zero(); s.rows_orig],
            iterations: 0,
            ray: None,
            farkas: None,
        })
    }

    /// Degenerate pivots that swap zero-valued artificials out of the basis
    /// for cleaner phase-2 duals; rows with no eligible pivot are dependent
    /// and keep their artificial fixed at zero.
    fn drive_out_artificials(&mut self) -> Result<(), SolveError> {
        let m = self.s.m;
        let mut rho = vec![T::zero(); m];
        let mut w = vec![T::zero(); m];
        for r in 0..m {
            if self.basis[r] < self.ns {
                continue;
            }
            for v in rho.iter_mut() {
                *v = T::zero();
            }
            rho[r] = T::one();
            self.btran(&mut rho);
            let mut pick: Option<(usize, T)> = None;
            for j in 0..self.ns {
                if self.stat[j] == Stat::Basic {
                    continue;
                }
                let alpha = self.col_dot(j, &rho).abs();
                if alpha > T::of(1e-7) {
                    match pick {
                        Some((_, best)) if alpha <= best => {}
                        _ => pick = Some((j, alpha)),
                    }
                }
            }
            if let Some((j, _)) = pick {
                self.col_dense(j, &mut w);
                self.ftran(&mut w);
                let art = self.basis[r];
                self.x[j] = self.nonbasic_value(j);
                self.stat[j] = Stat::Basic;
                self.stat[art] = Stat::AtLo;
                self.x[art] = T::zero();
                self.basis[r] = j;
                if w[r].abs() < T::of(1e-7) {
                    self.refactor()?;
                } else {
                    self.etas.push(Eta::from_pivot_column(&w, r));
                }
            }
        }
        Ok(())
    }
}

/// Solve the LP relaxation of a sealed model (integrality marks ignored).
pub fn solve_lp<T: Scalar>(
    model: &MilpModel<T>,
    cfg: &SolveConfig<T>,
) -> Result<Solution<T>, SolveError> {
    let solver = SimplexSolver::new(model, cfg.clone())?;
    let out = solver.solve_with_overrides(&[])?;
    finish_lp(model, cfg, out)
}

pub(crate) fn finish_lp<T: Scalar>(
    model: &MilpModel<T>,
    cfg: &SolveConfig<T>,
    out: LpOutcome<T>,
) -> Result<Solution<T>, SolveError> {
    let mut stats = SolveStats {
        simplex_iterations: out.iterations,
        ..SolveStats::default()
    };
    match out.status {
        LpStatus::Infeasible => {
            stats.farkas = out.farkas;
            Ok(Solution {
                status: SolveStatus::Infeasible,
                primal: Vec::new(),
                objective: T::infinity(),
                duals: Vec::new(),
                gap: T::zero(),
                stats,
            })
        }
        LpStatus::Unbounded => {
            stats.unbounded_ray = out.ray;
            Ok(Solution {
                status: SolveStatus::Unbounded,
                primal: Vec::new(),
                objective: T::neg_infinity(),
                duals: Vec::new(),
                gap: T::zero(),
                stats,
            })
        }
        LpStatus::Optimal => {
            // independent residual pass before the solution is released
            let report = check::check_primal(model, &out.x, cfg.feasibility_tolerance);
            if !report.rows_and_bounds_ok(cfg.feasibility_tolerance) {
                return Err(SolveError::Numerical(format!(
                    "solution failed residual re-check: max row violation {}, max bound violation {}",
                    report.max_row_violation, report.max_bound_violation
                )));
            }
            let dual_obj = check::dual_objective(model, &out.duals);
            if dual_obj > out.objective + T::of(1e-6) * (T::one() + out.objective.abs()) {
                return Err(SolveError::Numerical(format!(
                    "weak duality violated: dual {} > primal {}",
                    dual_obj, out.objective
                )));
            }
            stats.dual_objective = Some(dual_obj);
            Ok(Solution {
                status: SolveStatus::Optimal,
                primal: out.x,
                objective: out.objective,
                duals: out.duals,
                gap: T::zero(),
                stats,
            })
        }
    }
}

