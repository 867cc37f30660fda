//! Export/parse round-trip properties for the MPS writer.

use gtep_milp::mps::{export_mps, parse_mps};
use gtep_milp::{Integrality, MilpModel, RowSense};
use proptest::prelude::*;

#[derive(Debug, Clone)]
struct VarSpec {
    lo: f64,
    hi: f64,
    binary: bool,
    obj: f64,
}

fn var_spec() -> impl Strategy<Value = VarSpec> {
    (
        prop_oneof![
            Just(f64::NEG_INFINITY),
            (-100.0f64..100.0).prop_map(|v| (v * 16.0).round() / 16.0),
        ],
        prop_oneof![
            Just(f64::INFINITY),
            (0.0f64..200.0).prop_map(|v| (v * 16.0).round() / 16.0),
        ],
        any::<bool>(),
        -50.0f64..50.0,
    )
        .prop_map(|(lo_raw, hi_raw, binary, obj)| {
            if binary {
                VarSpec { lo: 0.0, hi: 1.0, binary, obj }
            } else {
                let lo = lo_raw;
                let hi = if hi_raw.is_finite() { lo_raw.max(0.0) + hi_raw } else { hi_raw };
                VarSpec { lo, hi, binary, obj }
            }
        })
}

fn row_spec(nvars: usize) -> impl Strategy<Value = (Vec<(usize, f64)>, RowSense, f64)> {
    (
        prop::collection::vec((0..nvars, -10.0f64..10.0), 0..6),
        prop_oneof![Just(RowSense::Le), Just(RowSense::Eq), Just(RowSense::Ge)],
        -100.0f64..100.0,
    )
}

fn build(vars: &[VarSpec], rows: &[(Vec<(usize, f64)>, RowSense, f64)], offset: f64) -> MilpModel<f64> {
    let mut m = MilpModel::new("PROP");
    let ids: Vec<_> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let integrality = if v.binary { Integrality::Binary } else { Integrality::Continuous };
            let id = m
                .add_variable(&format!("var[{},{}]", i, i * 7), v.lo, v.hi, integrality)
                .unwrap();
            m.set_obj_coeff(id, v.obj).unwrap();
            id
        })
        .collect();
    for (i, (terms, sense, rhs)) in rows.iter().enumerate() {
        let terms: Vec<_> = terms.iter().map(|&(vi, a)| (ids[vi], a)).collect();
        m.add_constraint(&format!("row[{},{}]", i, i + 3), &terms, *sense, *rhs)
            .unwrap();
    }
    m.add_obj_offset(offset);
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mps_roundtrip_is_identity(
        vars in prop::collection::vec(var_spec(), 1..12),
        rows_raw in prop::collection::vec((prop::collection::vec((0usize..1000, -10.0f64..10.0), 0..6),
                                           prop_oneof![Just(RowSense::Le), Just(RowSense::Eq), Just(RowSense::Ge)],
                                           -100.0f64..100.0), 0..10),
        offset in -10.0f64..10.0,
    ) {
        let rows: Vec<_> = rows_raw
            .into_iter()
            .map(|(terms, s, r)| {
                let terms: Vec<_> = terms.into_iter().map(|(vi, a)| (vi % vars.len(), a)).collect();
                (terms, s, r)
            })
            .collect();
        let m = build(&vars, &rows, offset);
        let doc = export_mps(&m);
        let back: MilpModel<f64> = parse_mps(&doc.text).unwrap();
        prop_assert!(m.same_structure(&back));
    }
}

/// A mid-size randomized model round-trips exactly (structural equality).
#[test]
fn roundtrip_50_by_80() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20240711);
    let mut m = MilpModel::new("RAND5080");
    let mut ids = Vec::new();
    for i in 0..80 {
        let binary = rng.gen_bool(0.3);
        let (lo, hi, integrality) = if binary {
            (0.0, 1.0, Integrality::Binary)
        } else {
            let lo = rng.gen_range(-20.0..5.0);
            (lo, lo + rng.gen_range(0.0..40.0), Integrality::Continuous)
        };
        let id = m
            .add_variable(&format!("column_with_long_name[{}]", i), lo, hi, integrality)
            .unwrap();
        m.set_obj_coeff(id, rng.gen_range(-30.0..30.0)).unwrap();
        ids.push(id);
    }
    for r in 0..50 {
        let nnz = rng.gen_range(1..8);
        let mut terms = Vec::new();
        for _ in 0..nnz {
            terms.push((ids[rng.gen_range(0..ids.len())], rng.gen_range(-9.0..9.0)));
        }
        let sense = match rng.gen_range(0..3) {
            0 => RowSense::Le,
            1 => RowSense::Eq,
            _ => RowSense::Ge,
        };
        m.add_constraint(&format!("constraint_row[{}]", r), &terms, sense, rng.gen_range(-50.0..50.0))
            .unwrap();
    }
    let doc = export_mps(&m);
    let back: MilpModel<f64> = parse_mps(&doc.text).unwrap();
    assert!(m.same_structure(&back));
    // export is insensitive to being re-exported from the parse
    let doc2 = export_mps(&back);
    let back2: MilpModel<f64> = parse_mps(&doc2.text).unwrap();
    assert!(back.same_structure(&back2));
}
