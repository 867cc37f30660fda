use std::collections::HashMap;

use thiserror::Error;

use crate::Scalar;

/// Handle to a variable (column) of a [`MilpModel`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub(crate) usize);

impl VarId {
    /// Column index of the variable, in insertion order.
    pub fn index(self) -> usize {
        self.0
    }

    /// Rebuild a handle from a dense column index. The caller is
    /// responsible for the index being in range for the model it is used
    /// against.
    pub fn from_dense_index(index: usize) -> Self {
        VarId(index)
    }
}

/// Handle to a constraint (row) of a [`MilpModel`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowId(pub(crate) usize);

impl RowId {
    /// Row index of the constraint, in insertion order.
    pub fn index(self) -> usize {
        self.0
    }

    /// Rebuild a handle from a dense row index (caller keeps it in range).
    pub fn from_dense_index(index: usize) -> Self {
        RowId(index)
    }
}

/// Integrality mark of a variable.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Integrality {
    Continuous,
    Binary,
}

/// Sense of a constraint row.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub(crate) struct Variable<T> {
    pub name: String,
    pub lo: T,
    pub hi: T,
    pub integrality: Integrality,
    pub obj: T,
}

#[derive(Clone, Debug)]
pub(crate) struct Constraint<T> {
    pub name: String,
    /// Sorted by column index, duplicates merged, exact zeros dropped.
    pub terms: Vec<(VarId, T)>,
    pub sense: RowSense,
    pub rhs: T,
}

/// Errors raised while building a model.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("variable handle {0} out of range")]
    UnknownVariable(usize),
    #[error("invalid bounds [{lo}, {hi}] for {name:?}")]
    InvalidBounds { name: String, lo: f64, hi: f64 },
    #[error("model is sealed")]
    Sealed,
    #[error("coefficient for {0:?} is not finite")]
    NotFinite(String),
}

/// Sparse MILP container: variables with bounds and integrality marks,
/// constraint rows, and a linear minimization objective.
///
/// Construction is single-writer; [`MilpModel::seal`] freezes the model for
/// solving and export. Insertion order is the canonical row/column order in
/// every export.
#[derive(Clone, Debug, Default)]
pub struct MilpModel<T> {
    name: String,
    vars: Vec<Variable<T>>,
    rows: Vec<Constraint<T>>,
    var_names: HashMap<String, usize>,
    row_names: HashMap<String, usize>,
    obj_offset: T,
    sealed: bool,
}

impl<T: Scalar> MilpModel<T> {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            vars: Vec::new(),
            rows: Vec::new(),
            var_names: HashMap::new(),
            row_names: HashMap::new(),
            obj_offset: T::zero(),
            sealed: false,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn is_sealed(&self) -> bool {
        self.sealed
    }

    /// Add a variable with the given bounds. Binary variables must keep
    /// their bounds inside [0, 1].
    pub fn add_variable(
        &mut self,
        name: &str,
        lo: T,
        hi: T,
        integrality: Integrality,
    ) -> Result<VarId, ModelError> {
        if self.sealed {
            return Err(ModelError::Sealed);
        }
        if self.var_names.contains_key(name) {
            return Err(ModelError::DuplicateName(name.to_string()));
        }
        check_bounds(name, lo, hi, integrality)?;
        let id = VarId(self.vars.len());
        self.var_names.insert(name.to_string(), id.0);
        self.vars.push(Variable {
            name: name.to_string(),
            lo,
            hi,
            integrality,
            obj: T::zero(),
        });
        Ok(id)
    }

    /// Convenience for a binary variable with bounds [0, 1].
    pub fn add_binary(&mut self, name: &str) -> Result<VarId, ModelError> {
        self.add_variable(name, T::zero(), T::one(), Integrality::Binary)
    }

    /// Add a constraint row. Duplicate variable entries are merged by
    /// summation; exact zero coefficients are dropped.
    pub fn add_constraint(
        &mut self,
        name: &str,
        terms: &[(VarId, T)],
        sense: RowSense,
        rhs: T,
    ) -> Result<RowId, ModelError> {
        if self.sealed {
            return Err(ModelError::Sealed);
        }
        if self.row_names.contains_key(name) {
            return Err(ModelError::DuplicateName(name.to_string()));
        }
        if !rhs.is_finite() {
            return Err(ModelError::NotFinite(name.to_string()));
        }
        let mut merged: Vec<(VarId, T)> = Vec::with_capacity(terms.len());
        for &(v, a) in terms {
            if v.0 >= self.vars.len() {
                return Err(ModelError::UnknownVariable(v.0));
            }
            if !a.is_finite() {
                return Err(ModelError::NotFinite(name.to_string()));
            }
            merged.push((v, a));
        }
        merged.sort_by_key(|&(v, _)| v);
        let mut compact: Vec<(VarId, T)> = Vec::with_capacity(merged.len());
        for (v, a) in merged {
            match compact.last_mut() {
                Some((pv, pa)) if *pv == v => *pa = *pa + a,
                _ => compact.push((v, a)),
            }
        }
        compact.retain(|&(_, a)| a != T::zero());
        let id = RowId(self.rows.len());
        self.row_names.insert(name.to_string(), id.0);
        self.rows.push(Constraint {
            name: name.to_string(),
            terms: compact,
            sense,
            rhs,
        });
        Ok(id)
    }

    /// Set the objective coefficient of a variable (minimization).
    pub fn set_obj_coeff(&mut self, var: VarId, c: T) -> Result<(), ModelError> {
        if self.sealed {
            return Err(ModelError::Sealed);
        }
        let v = self
            .vars
            .get_mut(var.0)
            .ok_or(ModelError::UnknownVariable(var.0))?;
        if !c.is_finite() {
            return Err(ModelError::NotFinite(v.name.clone()));
        }
        v.obj = c;
        Ok(())
    }

    /// Add to the objective coefficient of a variable.
    pub fn add_obj_coeff(&mut self, var: VarId, c: T) -> Result<(), ModelError> {
        if self.sealed {
            return Err(ModelError::Sealed);
        }
        let v = self
            .vars
            .get_mut(var.0)
            .ok_or(ModelError::UnknownVariable(var.0))?;
        let next = v.obj + c;
        if !next.is_finite() {
            return Err(ModelError::NotFinite(v.name.clone()));
        }
        v.obj = next;
        Ok(())
    }

    /// Add to the constant objective offset.
    pub fn add_obj_offset(&mut self, c: T) {
        self.obj_offset = self.obj_offset + c;
    }

    pub fn obj_offset(&self) -> T {
        self.obj_offset
    }

    /// Replace the bounds of a variable (used to fix decisions).
    pub fn set_bounds(&mut self, var: VarId, lo: T, hi: T) -> Result<(), ModelError> {
        let integrality = self
            .vars
            .get(var.0)
            .ok_or(ModelError::UnknownVariable(var.0))?
            .integrality;
        let name = self.vars[var.0].name.clone();
        check_bounds(&name, lo, hi, integrality)?;
        self.vars[var.0].lo = lo;
        self.vars[var.0].hi = hi;
        Ok(())
    }

    /// Freeze the model. Further structural edits error with
    /// [`ModelError::Sealed`]; bound changes stay allowed so integer
    /// decisions can be fixed between solves.
    pub fn seal(&mut self) {
        self.sealed = true;
    }

    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.var_names.get(name).map(|&i| VarId(i))
    }

    pub fn row_id(&self, name: &str) -> Option<RowId> {
        self.row_names.get(name).map(|&i| RowId(i))
    }

    pub fn var_name(&self, var: VarId) -> &str {
        &self.vars[var.0].name
    }

    pub fn row_name(&self, row: RowId) -> &str {
        &self.rows[row.0].name
    }

    pub fn bounds(&self, var: VarId) -> (T, T) {
        (self.vars[var.0].lo, self.vars[var.0].hi)
    }

    pub fn integrality(&self, var: VarId) -> Integrality {
        self.vars[var.0].integrality
    }

    pub fn obj_coeff(&self, var: VarId) -> T {
        self.vars[var.0].obj
    }

    pub fn row_sense(&self, row: RowId) -> RowSense {
        self.rows[row.0].sense
    }

    pub fn row_rhs(&self, row: RowId) -> T {
        self.rows[row.0].rhs
    }

    pub fn row_terms(&self, row: RowId) -> &[(VarId, T)] {
        &self.rows[row.0].terms
    }

    pub fn var_ids(&self) -> impl Iterator<Item = VarId> {
        (0..self.vars.len()).map(VarId)
    }

    pub fn row_ids(&self) -> impl Iterator<Item = RowId> {
        (0..self.rows.len()).map(RowId)
    }

    /// Evaluate the objective at a primal point.
    pub fn eval_objective(&self, primal: &[T]) -> T {
        let mut z = self.obj_offset;
        for (v, x) in self.vars.iter().zip(primal) {
            z = z + v.obj * *x;
        }
        z
    }

    /// Evaluate the left-hand side of a row at a primal point.
    pub fn eval_row(&self, row: RowId, primal: &[T]) -> T {
        let mut acc = T::zero();
        for &(v, a) in &self.rows[row.0].terms {
            acc = acc + a * primal[v.0];
        }
        acc
    }

    /// Copy of the model without the rows for which `drop_row` returns
    /// true. Variables, bounds and objective are preserved.
    pub fn without_rows(&self, mut drop_row: impl FnMut(RowId) -> bool) -> Self {
        let mut out = Self::new(&self.name);
        out.vars = self.vars.clone();
        out.var_names = self.var_names.clone();
        out.obj_offset = self.obj_offset;
        for (i, r) in self.rows.iter().enumerate() {
            if !drop_row(RowId(i)) {
                out.row_names.insert(r.name.clone(), out.rows.len());
                out.rows.push(r.clone());
            }
        }
        out.sealed = self.sealed;
        out
    }

    /// Structural equality ignoring names: dimensions, bounds, integrality,
    /// objective, row coefficients, senses and right-hand sides must match
    /// exactly (bit-for-bit on the scalar values).
    pub fn same_structure(&self, other: &Self) -> bool {
        if self.vars.len() != other.vars.len() || self.rows.len() != other.rows.len() {
            return false;
        }
        if self.obj_offset != other.obj_offset {
            return false;
        }
        for (a, b) in self.vars.iter().zip(&other.vars) {
            if a.integrality != b.integrality || a.obj != b.obj {
                return false;
            }
            // Infinities compare equal by ==; NaN never appears in bounds.
            if !(same_bound(a.lo, b.lo) && same_bound(a.hi, b.hi)) {
                return false;
            }
        }
        for (a, b) in self.rows.iter().zip(&other.rows) {
            if a.sense != b.sense || a.rhs != b.rhs || a.terms != b.terms {
                return false;
            }
        }
        true
    }
}

fn same_bound<T: Scalar>(a: T, b: T) -> bool {
    a == b || (a.is_infinite() && b.is_infinite() && a.is_sign_positive() == b.is_sign_positive())
}

fn check_bounds<T: Scalar>(
    name: &str,
    lo: T,
    hi: T,
    integrality: Integrality,
) -> Result<(), ModelError> {
    let bad = lo > hi
        || lo.is_nan()
        || hi.is_nan()
        || (integrality == Integrality::Binary && (lo < T::zero() || hi > T::one()));
    if bad {
        return Err(ModelError::InvalidBounds {
            name: name.to_string(),
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_gets_unit_bounds() {
        let mut m: MilpModel<f64> = MilpModel::new("t");
        let x = m.add_binary("x").unwrap();
        assert_eq!(m.bounds(x), (0.0, 1.0));
        assert_eq!(m.integrality(x), Integrality::Binary);
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut m: MilpModel<f64> = MilpModel::new("t");
        m.add_binary("x").unwrap();
        assert!(matches!(
            m.add_binary("x"),
            Err(ModelError::DuplicateName(_))
        ));
        let x = m.var_id("x").unwrap();
        m.add_constraint("r", &[(x, 1.0)], RowSense::Le, 1.0).unwrap();
        assert!(m
            .add_constraint("r", &[(x, 1.0)], RowSense::Le, 1.0)
            .is_err());
    }

    #[test]
    fn empty_row_accepted() {
        let mut m: MilpModel<f64> = MilpModel::new("t");
        let r = m.add_constraint("r", &[], RowSense::Ge, 0.0).unwrap();
        assert!(m.row_terms(r).is_empty());
    }

    #[test]
    fn duplicate_terms_merge() {
        let mut m: MilpModel<f64> = MilpModel::new("t");
        let x = m
            .add_variable("x", 0.0, 10.0, Integrality::Continuous)
            .unwrap();
        let r = m
            .add_constraint("r", &[(x, 1.0), (x, 2.0)], RowSense::Le, 5.0)
            .unwrap();
        assert_eq!(m.row_terms(r), &[(x, 3.0)]);
    }

    #[test]
    fn counts_match_after_construction() {
        let mut m: MilpModel<f64> = MilpModel::new("t");
        let a = m.add_variable("a", 0.0, 1.0, Integrality::Continuous).unwrap();
        let b = m.add_variable("b", 0.0, 1.0, Integrality::Continuous).unwrap();
        let _c = m.add_variable("c", 0.0, 1.0, Integrality::Continuous).unwrap();
        m.add_constraint("r1", &[(a, 1.0), (b, 1.0)], RowSense::Le, 1.0)
            .unwrap();
        m.add_constraint("r2", &[(b, -1.0)], RowSense::Ge, -1.0).unwrap();
        assert_eq!((m.num_vars(), m.num_rows()), (3, 2));
    }

    #[test]
    fn sealed_rejects_structure_edits() {
        let mut m: MilpModel<f64> = MilpModel::new("t");
        let x = m.add_binary("x").unwrap();
        m.seal();
        assert!(matches!(m.add_binary("y"), Err(ModelError::Sealed)));
        // fixing bounds stays allowed
        m.set_bounds(x, 1.0, 1.0).unwrap();
    }

    #[test]
    fn without_rows_drops_selected() {
        let mut m: MilpModel<f64> = MilpModel::new("t");
        let x = m.add_binary("x").unwrap();
        let r1 = m.add_constraint("r1", &[(x, 1.0)], RowSense::Le, 1.0).unwrap();
        let _r2 = m.add_constraint("r2", &[(x, 1.0)], RowSense::Ge, 0.0).unwrap();
        let m2 = m.without_rows(|r| r == r1);
        assert_eq!(m2.num_rows(), 1);
        assert_eq!(m2.row_name(RowId(0)), "r2");
        assert_eq!(m2.num_vars(), 1);
    }
}
