//! Investment decision variables and inter-project logic rows.

use gtep_milp::Integrality;

use crate::catalog::DecisionKind;

use super::{Builder, FormError};

/// One decision variable per project (binary, fractional or fixed at one),
/// then precedence/association rows `x_required − x_dependent ≥ 0`,
/// exclusivity rows `Σ x ≤ 1` and aggregate capacity bands
/// `lo ≤ Σ w x ≤ hi`.
pub(super) fn emit_investment_logic(b: &mut Builder<'_>) -> Result<(), FormError> {
    let catalog = &b.view.instance.catalog;
    for p in &catalog.projects {
        let name = format!("x[{}]", p.id);
        let var = match p.decision {
            DecisionKind::Binary => {
                b.model
                    .add_variable(&name, 0.0, 1.0, Integrality::Binary)?
            }
            DecisionKind::Continuous => {
                b.model
                    .add_variable(&name, 0.0, 1.0, Integrality::Continuous)?
            }
            DecisionKind::Obligatory => {
                b.model
                    .add_variable(&name, 1.0, 1.0, Integrality::Continuous)?
            }
        };
        b.index.project_x.push(var);
    }

    let x_of = |b: &Builder<'_>, id: &str| -> Result<gtep_milp::VarId, FormError> {
        catalog
            .project_index(id)
            .map(|i| b.index.project_x[i])
            .ok_or_else(|| FormError::UnknownReference(format!("project {:?}", id)))
    };

    for (i, (required, dependent)) in catalog.precedence.iter().enumerate() {
        let terms = [(x_of(b, required)?, 1.0), (x_of(b, dependent)?, -1.0)];
        b.row_ge(format!("prec[{}]", i), &terms, 0.0)?;
    }
    for (i, (first, second)) in catalog.association.iter().enumerate() {
        let terms = [(x_of(b, first)?, 1.0), (x_of(b, second)?, -1.0)];
        b.row_ge(format!("asso[{}]", i), &terms, 0.0)?;
    }
    for (i, set) in catalog.exclusivity.iter().enumerate() {
        let mut terms = Vec::with_capacity(set.len());
        for id in set {
            terms.push((x_of(b, id)?, 1.0));
        }
        b.row_le(format!("excl[{}]", i), &terms, 1.0)?;
    }
    for group in &catalog.capacity_groups {
        let mut terms = Vec::with_capacity(group.weights.len());
        for (id, w) in &group.weights {
            terms.push((x_of(b, id)?, *w));
        }
        if let Some(lo) = group.lo {
            b.row_ge(format!("capmin[{}]", group.id), &terms, lo)?;
        }
        if let Some(hi) = group.hi {
            b.row_le(format!("capmax[{}]", group.id), &terms, hi)?;
        }
    }
    Ok(())
}
