//! Fixed-layout MPS writer and parser.
//!
//! Layout follows the classic fixed-field MPS conventions (indicator fields
//! at columns 2-3, names at 5-12 / 15-22, values at 25-36 / 50-61) with two
//! documented relaxations: numeric values are rendered at full precision and
//! may overrun their field, and all fields are whitespace-delimited when
//! read back. Binary variables are wrapped in `'MARKER'` `'INTORG'` /
//! `'INTEND'` lines and always carry explicit BOUNDS entries, so reader
//! integer-bound defaults never matter.
//!
//! Names longer than 8 characters are replaced by a deterministic
//! 8-character alias (2-character prefix plus 6 base-36 digits of an FNV-1a
//! hash); [`MpsDocument`] keeps the alias tables so callers can map solver
//! output back to model indices. Re-parsing an exported document reproduces
//! the model exactly up to names ([`crate::MilpModel::same_structure`]).

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::{Integrality, MilpModel, RowSense, Scalar, VarId};

/// Name of the objective row in exported files.
pub const OBJECTIVE_ROW: &str = "COST";

/// An exported MPS document plus the name aliasing used in it.
#[derive(Clone, Debug)]
pub struct MpsDocument {
    /// The document text, ending in `ENDATA\n`.
    pub text: String,
    /// MPS row name per model row index.
    pub row_names: Vec<String>,
    /// MPS column name per model variable index.
    pub col_names: Vec<String>,
}

impl MpsDocument {
    /// Model variable index for an MPS column name, if any.
    pub fn var_of(&self, mps_name: &str) -> Option<usize> {
        self.col_names.iter().position(|n| n == mps_name)
    }
}

/// Errors raised while parsing an MPS document.
#[derive(Debug, Error)]
pub enum MpsParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("missing section {0}")]
    MissingSection(&'static str),
    #[error("line {line}: unsupported feature: {msg}")]
    Unsupported { line: usize, msg: String },
}

fn err(line: usize, msg: impl Into<String>) -> MpsParseError {
    MpsParseError::Malformed {
        line,
        msg: msg.into(),
    }
}

/// Render a scalar with enough digits to round-trip exactly.
pub(crate) fn format_value<T: Scalar>(v: T) -> String {
    let a = v.abs();
    if v != T::zero() && (a >= T::of(1e15) || a < T::of(1e-4)) {
        format!("{:e}", v)
    } else {
        format!("{}", v)
    }
}

fn fnv1a(bytes: &[u8], salt: u64) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325 ^ salt.wrapping_mul(0x9e3779b97f4a7c15);
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn base36(mut v: u64, digits: usize) -> String {
    const ALPHABET: &[u8] = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    let mut out = vec![b'0'; digits];
    for slot in out.iter_mut().rev() {
        *slot = ALPHABET[(v % 36) as usize];
        v /= 36;
    }
    String::from_utf8(out).unwrap()
}

/// Deterministic 8-character alias for names that do not fit the format.
fn short_name(name: &str, taken: &mut HashMap<String, usize>, index: usize) -> String {
    let fits = name.len() <= 8 && !name.is_empty() && name.chars().all(|c| c.is_ascii_graphic());
    if fits && !taken.contains_key(name) {
        taken.insert(name.to_string(), index);
        return name.to_string();
    }
    let prefix: String = name
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .take(2)
        .collect();
    let prefix = if prefix.is_empty() { "X".to_string() } else { prefix };
    for salt in 0u64.. {
        let candidate = format!(
            "{}{}",
            prefix,
            base36(fnv1a(name.as_bytes(), salt), 8 - prefix.len())
        );
        if !taken.contains_key(&candidate) {
            taken.insert(candidate.clone(), index);
            return candidate;
        }
    }
    unreachable!()
}

/// Export a model as fixed-layout MPS text.
pub fn export_mps<T: Scalar>(model: &MilpModel<T>) -> MpsDocument {
    let mut taken: HashMap<String, usize> = HashMap::new();
    taken.insert(OBJECTIVE_ROW.to_string(), usize::MAX);
    let row_names: Vec<String> = model
        .row_ids()
        .map(|r| short_name(model.row_name(r), &mut taken, r.index()))
        .collect();
    let mut col_taken: HashMap<String, usize> = HashMap::new();
    let col_names: Vec<String> = model
        .var_ids()
        .map(|v| short_name(model.var_name(v), &mut col_taken, v.index()))
        .collect();

    let mut text = String::new();
    let _ = writeln!(text, "NAME          {}", model.name());
    text.push_str("ROWS\n");
    let _ = writeln!(text, " N  {}", OBJECTIVE_ROW);
    for r in model.row_ids() {
        let tag = match model.row_sense(r) {
            RowSense::Le => "L",
            RowSense::Eq => "E",
            RowSense::Ge => "G",
        };
        let _ = writeln!(text, " {}  {}", tag, row_names[r.index()]);
    }

    text.push_str("COLUMNS\n");
    // Column-major entries: terms are stored per row, gather per column.
    let mut per_col: Vec<Vec<(usize, T)>> = vec![Vec::new(); model.num_vars()];
    for r in model.row_ids() {
        for &(v, a) in model.row_terms(r) {
            per_col[v.index()].push((r.index(), a));
        }
    }
    let mut in_integer = false;
    let mut marker_seq = 0usize;
    for v in model.var_ids() {
        let integer = model.integrality(v) == Integrality::Binary;
        if integer != in_integer {
            marker_seq += 1;
            let kind = if integer { "'INTORG'" } else { "'INTEND'" };
            let _ = writeln!(
                text,
                "    {:<8}  {:<8}                 {}",
                format!("M{}", marker_seq),
                "'MARKER'",
                kind
            );
            in_integer = integer;
        }
        let mut entries: Vec<(&str, T)> = Vec::new();
        let c = model.obj_coeff(v);
        if c != T::zero() {
            entries.push((OBJECTIVE_ROW, c));
        }
        for &(ri, a) in &per_col[v.index()] {
            entries.push((row_names[ri].as_str(), a));
        }
        if entries.is_empty() {
            // declare the column even if it touches nothing
            entries.push((OBJECTIVE_ROW, T::zero()));
        }
        for pair in entries.chunks(2) {
            let mut line = format!(
                "    {:<8}  {:<8}  {:<12}",
                col_names[v.index()],
                pair[0].0,
                format_value(pair[0].1)
            );
            if let Some(&(rn, rv)) = pair.get(1) {
                let _ = write!(line, "   {:<8}  {:<12}", rn, format_value(rv));
            }
            let _ = writeln!(text, "{}", line.trim_end());
        }
    }
    if in_integer {
        marker_seq += 1;
        let _ = writeln!(
            text,
            "    {:<8}  {:<8}                 {}",
            format!("M{}", marker_seq),
            "'MARKER'",
            "'INTEND'"
        );
    }

    text.push_str("RHS\n");
    let offset = model.obj_offset();
    if offset != T::zero() {
        // objective constant: by convention the RHS of the cost row is the
        // negated offset
        let _ = writeln!(
            text,
            "    {:<8}  {:<8}  {}",
            "RHS",
            OBJECTIVE_ROW,
            format_value(-offset)
        );
    }
    for r in model.row_ids() {
        let rhs = model.row_rhs(r);
        if rhs != T::zero() {
            let _ = writeln!(
                text,
                "    {:<8}  {:<8}  {}",
                "RHS",
                row_names[r.index()],
                format_value(rhs)
            );
        }
    }

    text.push_str("RANGES\n");
    text.push_str("BOUNDS\n");
    for v in model.var_ids() {
        let (lo, hi) = model.bounds(v);
        let name = col_names[v.index()].as_str();
        let binary = model.integrality(v) == Integrality::Binary;
        if binary && lo == T::zero() && hi == T::one() {
            let _ = writeln!(text, " BV {:<8}  {:<8}", "BND", name);
            continue;
        }
        if lo == hi {
            let _ = writeln!(
                text,
                " FX {:<8}  {:<8}  {}",
                "BND",
                name,
                format_value(lo)
            );
            continue;
        }
        if lo == T::neg_infinity() && hi == T::infinity() {
            let _ = writeln!(text, " FR {:<8}  {:<8}", "BND", name);
            continue;
        }
        if lo == T::neg_infinity() {
            let _ = writeln!(text, " MI {:<8}  {:<8}", "BND", name);
        } else if lo != T::zero() || binary {
            let _ = writeln!(
                text,
                " LO {:<8}  {:<8}  {}",
                "BND",
                name,
                format_value(lo)
            );
        }
        if hi != T::infinity() {
            let _ = writeln!(
                text,
                " UP {:<8}  {:<8}  {}",
                "BND",
                name,
                format_value(hi)
            );
        }
    }
    text.push_str("ENDATA\n");

    MpsDocument {
        text,
        row_names,
        col_names,
    }
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Section {
    None,
    Rows,
    Columns,
    Rhs,
    Ranges,
    Bounds,
    Done,
}

struct RawRow<T> {
    name: String,
    sense: RowSense,
    rhs: T,
    range: Option<T>,
}

/// Parse an MPS document into a fresh model.
///
/// Supports the sections and bound types this crate's writer emits, plus
/// RANGES entries (a ranged row is expanded into the equivalent pair of
/// single-sense rows, the extra one suffixed `~r`). General integer
/// variables are not supported; integer-marked columns must end up with
/// bounds inside [0, 1].
pub fn parse_mps<T: Scalar>(text: &str) -> Result<MilpModel<T>, MpsParseError> {
    let mut section = Section::None;
    let mut name = String::new();

    let mut rows: Vec<RawRow<T>> = Vec::new();
    let mut row_index: HashMap<String, usize> = HashMap::new();
    let mut objective_row: Option<String> = None;
    let mut obj_offset = T::zero();

    struct RawCol<T> {
        name: String,
        integer: bool,
        obj: T,
        terms: Vec<(usize, T)>,
        lo: Option<T>,
        hi: Option<T>,
        fixed: Option<T>,
        binary_bound: bool,
    }
    let mut cols: Vec<RawCol<T>> = Vec::new();
    let mut col_index: HashMap<String, usize> = HashMap::new();
    let mut in_integer = false;

    let parse_num = |tok: &str, line: usize| -> Result<T, MpsParseError> {
        tok.parse::<f64>()
            .map(T::of)
            .map_err(|_| err(line, format!("bad number {:?}", tok)))
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        if raw.starts_with('*') || raw.trim().is_empty() {
            continue;
        }
        let indented = raw.starts_with(' ') || raw.starts_with('\t');
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if !indented {
            section = match toks[0] {
                "NAME" => {
                    name = toks.get(1).unwrap_or(&"").to_string();
                    section
                }
                "ROWS" => Section::Rows,
                "COLUMNS" => Section::Columns,
                "RHS" => Section::Rhs,
                "RANGES" => Section::Ranges,
                "BOUNDS" => Section::Bounds,
                "ENDATA" => Section::Done,
                other => return Err(err(line, format!("unknown section {:?}", other))),
            };
            continue;
        }
        match section {
            Section::None | Section::Done => {
                return Err(err(line, "data line outside any section"))
            }
            Section::Rows => {
                if toks.len() != 2 {
                    return Err(err(line, "expected <sense> <name>"));
                }
                let sense = match toks[0] {
                    "N" => {
                        if objective_row.is_none() {
                            objective_row = Some(toks[1].to_string());
                        } else {
                            return Err(MpsParseError::Unsupported {
                                line,
                                msg: "multiple objective (N) rows".into(),
                            });
                        }
                        continue;
                    }
                    "L" => RowSense::Le,
                    "E" => RowSense::Eq,
                    "G" => RowSense::Ge,
                    other => return Err(err(line, format!("bad row sense {:?}", other))),
                };
                if row_index.contains_key(toks[1]) {
                    return Err(err(line, format!("duplicate row {:?}", toks[1])));
                }
                row_index.insert(toks[1].to_string(), rows.len());
                rows.push(RawRow {
                    name: toks[1].to_string(),
                    sense,
                    rhs: T::zero(),
                    range: None,
                });
            }
            Section::Columns => {
                if toks.len() >= 3 && toks[1] == "'MARKER'" {
                    match *toks.last().unwrap() {
                        "'INTORG'" => in_integer = true,
                        "'INTEND'" => in_integer = false,
                        other => return Err(err(line, format!("bad marker {:?}", other))),
                    }
                    continue;
                }
                if toks.len() != 3 && toks.len() != 5 {
                    return Err(err(line, "expected <col> (<row> <value>){1,2}"));
                }
                let ci = *col_index.entry(toks[0].to_string()).or_insert_with(|| {
                    cols.push(RawCol {
                        name: toks[0].to_string(),
                        integer: in_integer,
                        obj: T::zero(),
                        terms: Vec::new(),
                        lo: None,
                        hi: None,
                        fixed: None,
                        binary_bound: false,
                    });
                    cols.len() - 1
                });
                for pair in toks[1..].chunks(2) {
                    let v = parse_num(pair[1], line)?;
                    if Some(pair[0]) == objective_row.as_deref() {
                        cols[ci].obj = cols[ci].obj + v;
                    } else {
                        let ri = *row_index
                            .get(pair[0])
                            .ok_or_else(|| err(line, format!("unknown row {:?}", pair[0])))?;
                        cols[ci].terms.push((ri, v));
                    }
                }
            }
            Section::Rhs => {
                if toks.len() != 3 && toks.len() != 5 {
                    return Err(err(line, "expected <set> (<row> <value>){1,2}"));
                }
                for pair in toks[1..].chunks(2) {
                    let v = parse_num(pair[1], line)?;
                    if Some(pair[0]) == objective_row.as_deref() {
                        obj_offset = -v;
                    } else {
                        let ri = *row_index
                            .get(pair[0])
                            .ok_or_else(|| err(line, format!("unknown row {:?}", pair[0])))?;
                        rows[ri].rhs = v;
                    }
                }
            }
            Section::Ranges => {
                if toks.len() != 3 && toks.len() != 5 {
                    return Err(err(line, "expected <set> (<row> <value>){1,2}"));
                }
                for pair in toks[1..].chunks(2) {
                    let ri = *row_index
                        .get(pair[0])
                        .ok_or_else(|| err(line, format!("unknown row {:?}", pair[0])))?;
                    rows[ri].range = Some(parse_num(pair[1], line)?);
                }
            }
            Section::Bounds => {
                if toks.len() < 3 {
                    return Err(err(line, "expected <type> <set> <col> [<value>]"));
                }
                let ci = *col_index
                    .get(toks[2])
                    .ok_or_else(|| err(line, format!("unknown column {:?}", toks[2])))?;
                let value = || -> Result<T, MpsParseError> {
                    toks.get(3)
                        .ok_or_else(|| err(line, "missing bound value"))
                        .and_then(|t| parse_num(t, line))
                };
                match toks[0] {
                    "LO" => cols[ci].lo = Some(value()?),
                    "UP" => cols[ci].hi = Some(value()?),
                    "FX" => cols[ci].fixed = Some(value()?),
                    "FR" => {
                        cols[ci].lo = Some(T::neg_infinity());
                        cols[ci].hi = Some(T::infinity());
                    }
                    "MI" => cols[ci].lo = Some(T::neg_infinity()),
                    "PL" => cols[ci].hi = Some(T::infinity()),
                    "BV" => {
                        cols[ci].binary_bound = true;
                        cols[ci].integer = true;
                    }
                    other => {
                        return Err(MpsParseError::Unsupported {
                            line,
                            msg: format!("bound type {:?}", other),
                        })
                    }
                }
            }
        }
    }

    if objective_row.is_none() {
        return Err(MpsParseError::MissingSection("ROWS (objective)"));
    }

    let mut model = MilpModel::new(&name);
    let mut var_ids: Vec<VarId> = Vec::with_capacity(cols.len());
    for (ci, col) in cols.iter().enumerate() {
        let (lo, hi) = if col.binary_bound {
            (T::zero(), T::one())
        } else if let Some(fx) = col.fixed {
            (fx, fx)
        } else {
            (col.lo.unwrap_or(T::zero()), col.hi.unwrap_or(T::infinity()))
        };
        let integrality = if col.integer {
            if lo < T::zero() || hi > T::one() {
                return Err(MpsParseError::Unsupported {
                    line: 0,
                    msg: format!("general integer column {:?} (bounds outside [0,1])", col.name),
                });
            }
            Integrality::Binary
        } else {
            Integrality::Continuous
        };
        let id = model
            .add_variable(&col.name, lo, hi, integrality)
            .map_err(|e| err(0, format!("column {}: {}", ci, e)))?;
        if col.obj != T::zero() {
            model.set_obj_coeff(id, col.obj).unwrap();
        }
        var_ids.push(id);
    }
    model.add_obj_offset(obj_offset);

    // terms are stored per column; regroup per row
    let mut per_row: Vec<Vec<(VarId, T)>> = vec![Vec::new(); rows.len()];
    for (ci, col) in cols.iter().enumerate() {
        for &(ri, v) in &col.terms {
            per_row[ri].push((var_ids[ci], v));
        }
    }
    for (ri, row) in rows.iter().enumerate() {
        model
            .add_constraint(&row.name, &per_row[ri], row.sense, row.rhs)
            .map_err(|e| err(0, format!("row {}: {}", row.name, e)))?;
        if let Some(range) = row.range {
            let r = range.abs();
            let (sense, rhs) = match row.sense {
                RowSense::Le => (RowSense::Ge, row.rhs - r),
                RowSense::Ge => (RowSense::Le, row.rhs + r),
                RowSense::Eq => {
                    if range >= T::zero() {
                        (RowSense::Le, row.rhs + r)
                    } else {
                        (RowSense::Ge, row.rhs - r)
                    }
                }
            };
            // ranged rows expand to a second single-sense row
            let extra = format!("{}~r", row.name);
            model
                .add_constraint(&extra, &per_row[ri], sense, rhs)
                .map_err(|e| err(0, format!("row {}: {}", extra, e)))?;
        }
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_model_skeleton() {
        let m: MilpModel<f64> = MilpModel::new("EMPTY");
        let doc = export_mps(&m);
        for section in ["NAME", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA"] {
            assert!(doc.text.contains(section), "missing {}", section);
        }
        let back: MilpModel<f64> = parse_mps(&doc.text).unwrap();
        assert_eq!(back.num_vars(), 0);
        assert_eq!(back.num_rows(), 0);
        assert!(m.same_structure(&back));
    }

    #[test]
    fn single_bound_and_rhs_entries() {
        let mut m: MilpModel<f64> = MilpModel::new("T");
        let x = m.add_variable("x", 0.0, 5.0, Integrality::Continuous).unwrap();
        m.add_constraint("cap", &[(x, 1.0)], RowSense::Le, 5.0).unwrap();
        let doc = export_mps(&m);
        assert!(doc.text.contains(" UP BND       x         5"));
        assert!(doc.text.contains("RHS       cap       5"));
        let back: MilpModel<f64> = parse_mps(&doc.text).unwrap();
        assert!(m.same_structure(&back));
    }

    #[test]
    fn long_names_get_deterministic_aliases() {
        let mut m: MilpModel<f64> = MilpModel::new("T");
        let v = m
            .add_variable("g_th[1,1,13,1,plant_a]", 0.0, 10.0, Integrality::Continuous)
            .unwrap();
        m.add_constraint("bal[1,1,13,1,bus_main]", &[(v, 1.0)], RowSense::Eq, 4.0)
            .unwrap();
        let d1 = export_mps(&m);
        let d2 = export_mps(&m);
        assert_eq!(d1.text, d2.text);
        assert!(d1.col_names[0].len() <= 8);
        assert!(d1.row_names[0].len() <= 8);
        let back: MilpModel<f64> = parse_mps(&d1.text).unwrap();
        assert!(m.same_structure(&back));
    }

    #[test]
    fn binaries_round_trip_with_markers() {
        let mut m: MilpModel<f64> = MilpModel::new("T");
        let b = m.add_binary("build").unwrap();
        let c = m.add_variable("flow", 0.0, 7.5, Integrality::Continuous).unwrap();
        let f = m.add_binary("fixed1").unwrap();
        m.set_bounds(f, 1.0, 1.0).unwrap();
        m.set_obj_coeff(b, 12.5).unwrap();
        m.add_constraint("gate", &[(c, 1.0), (b, -7.5)], RowSense::Le, 0.0)
            .unwrap();
        m.add_obj_offset(3.25);
        let doc = export_mps(&m);
        assert!(doc.text.contains("'INTORG'"));
        assert!(doc.text.contains("'INTEND'"));
        assert!(doc.text.contains(" BV "));
        let back: MilpModel<f64> = parse_mps(&doc.text).unwrap();
        assert!(m.same_structure(&back));
    }

    #[test]
    fn free_and_negative_bounds_round_trip() {
        let mut m: MilpModel<f64> = MilpModel::new("T");
        m.add_variable("free", f64::NEG_INFINITY, f64::INFINITY, Integrality::Continuous)
            .unwrap();
        m.add_variable("neg", -2.5, -0.5, Integrality::Continuous).unwrap();
        m.add_variable("milo", f64::NEG_INFINITY, 4.0, Integrality::Continuous)
            .unwrap();
        let doc = export_mps(&m);
        let back: MilpModel<f64> = parse_mps(&doc.text).unwrap();
        assert!(m.same_structure(&back));
    }

    #[test]
    fn ranges_expand_to_row_pairs() {
        let text = "NAME          R\nROWS\n N  COST\n L  cap\nCOLUMNS\n    x         cap       1.0\nRHS\n    RHS       cap       10.0\nRANGES\n    RNG       cap       4.0\nBOUNDS\nENDATA\n";
        let m: MilpModel<f64> = parse_mps(text).unwrap();
        assert_eq!(m.num_rows(), 2);
        let lo = m.row_id("cap~r").unwrap();
        assert_eq!(m.row_sense(lo), RowSense::Ge);
        assert_eq!(m.row_rhs(lo), 6.0);
    }

    #[test]
    fn scientific_values_round_trip() {
        let mut m: MilpModel<f64> = MilpModel::new("T");
        let x = m
            .add_variable("x", 0.0, 1.2345678912345e17, Integrality::Continuous)
            .unwrap();
        m.set_obj_coeff(x, 3.0e-7).unwrap();
        m.add_constraint("r", &[(x, 1.0e-9)], RowSense::Ge, 2.0e-12).unwrap();
        let back: MilpModel<f64> = parse_mps(&export_mps(&m).text).unwrap();
        assert!(m.same_structure(&back));
    }
}
