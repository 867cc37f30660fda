//! CPLEX-style LP text export.
//!
//! Writes `Minimize` / `Subject To` / `Bounds` / `Binaries` / `End`
//! sections. Model names are written verbatim; the naming scheme used by
//! callers (letters, digits, `[`, `]`, `,`, `_`, `:`) stays clear of LP
//! operator characters, so no aliasing is needed.

use std::fmt::Write as _;

use crate::mps::format_value;
use crate::{Integrality, MilpModel, RowSense, Scalar};

/// Export a model as LP text.
pub fn export_lp<T: Scalar>(model: &MilpModel<T>) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "\\ Problem: {}", model.name());
    text.push_str("Minimize\n obj:");
    let mut wrote = false;
    for v in model.var_ids() {
        let c = model.obj_coeff(v);
        if c != T::zero() {
            let _ = write!(text, " {}", term(c, model.var_name(v), wrote));
            wrote = true;
        }
    }
    if model.obj_offset() != T::zero() {
        let c = model.obj_offset();
        let _ = write!(text, " {}", signed_constant(c, wrote));
        wrote = true;
    }
    if !wrote {
        text.push_str(" 0");
    }
    text.push('\n');

    text.push_str("Subject To\n");
    for r in model.row_ids() {
        let _ = write!(text, " {}:", model.row_name(r));
        let terms = model.row_terms(r);
        if terms.is_empty() {
            text.push_str(" 0");
        } else {
            let mut first = true;
            for &(v, a) in terms {
                let _ = write!(text, " {}", term(a, model.var_name(v), !first));
                first = false;
            }
        }
        let op = match model.row_sense(r) {
            RowSense::Le => "<=",
            RowSense::Eq => "=",
            RowSense::Ge => ">=",
        };
        let _ = writeln!(text, " {} {}", op, format_value(model.row_rhs(r)));
    }

    text.push_str("Bounds\n");
    for v in model.var_ids() {
        let (lo, hi) = model.bounds(v);
        let name = model.var_name(v);
        if lo == T::neg_infinity() && hi == T::infinity() {
            let _ = writeln!(text, " {} free", name);
        } else if lo == hi {
            let _ = writeln!(text, " {} = {}", name, format_value(lo));
        } else {
            let lo_s = if lo == T::neg_infinity() {
                "-inf".to_string()
            } else {
                format_value(lo)
            };
            if hi == T::infinity() {
                let _ = writeln!(text, " {} >= {}", name, lo_s);
            } else {
                let _ = writeln!(text, " {} <= {} <= {}", lo_s, name, format_value(hi));
            }
        }
    }

    let binaries: Vec<_> = model
        .var_ids()
        .filter(|&v| model.integrality(v) == Integrality::Binary)
        .collect();
    if !binaries.is_empty() {
        text.push_str("Binaries\n");
        for v in binaries {
            let _ = writeln!(text, " {}", model.var_name(v));
        }
    }
    text.push_str("End\n");
    text
}

fn term<T: Scalar>(c: T, name: &str, follow: bool) -> String {
    let mag = format_value(c.abs());
    if c < T::zero() {
        format!("- {} {}", mag, name)
    } else if follow {
        format!("+ {} {}", mag, name)
    } else {
        format!("{} {}", mag, name)
    }
}

fn signed_constant<T: Scalar>(c: T, follow: bool) -> String {
    let mag = format_value(c.abs());
    if c < T::zero() {
        format!("- {}", mag)
    } else if follow {
        format!("+ {}", mag)
    } else {
        mag
    }
}
