//! Bit-exact reproduction of the frozen tables: rank-1 central functions,
//! all 33 rank-3 central functions of order ≤ 3, and the barbell table.

mod fixtures;

use cfn_core::exactmath::{poly_parse, ALPHA_T, ALPHA_X, ALPHA_XYZ};
use cfn_core::recurrence::{cfindex_to_label, rank1_cf, shared_engine, BarbellLabel};

#[test]
fn rank1_table() {
    for (n, expect) in fixtures::RANK1.iter().enumerate() {
        let expect = poly_parse(ALPHA_X.clone(), expect).unwrap();
        assert_eq!(rank1_cf(n as u32), expect, "rank-1 n={}", n);
    }
}

#[test]
fn rank3_order_three_table() {
    let eng = shared_engine();
    for &(a, b, c, d, i, j, text) in fixtures::GOLDEN_33.iter() {
        let label = cfindex_to_label(a, b, c, d, i, j).unwrap();
        let expect = poly_parse(ALPHA_T.clone(), text).unwrap();
        let got = eng.rank3_cf(&label);
        assert_eq!(
            *got, expect,
            "χ^{{{},{}}}_{{{},{},{},{}}} (raw {:?})",
            i, j, a, b, c, d, label
        );
    }
}

#[test]
fn barbell_table() {
    let eng = shared_engine();
    for &(a, c, b, text) in fixtures::BARBELL.iter() {
        let expect = poly_parse(ALPHA_XYZ.clone(), text).unwrap();
        let got = eng.barbell(&BarbellLabel::new(a, c, b).unwrap());
        assert_eq!(*got, expect, "barbell ({},{};{})", a, c, b);
    }
}
