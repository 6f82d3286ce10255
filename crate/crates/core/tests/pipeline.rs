//! Library workflows across modules: file round trips, exact tables against
//! Monte Carlo, and reports that survive serialization.

use bec_core::analysis::{exact_fr, exact_weight_table, mc_fr, WeightTable};
use bec_core::codes::{format_code, parse_code, rm_code, support_weight, BoundKind};
use bec_core::exact::parse_grid;
use bec_core::verify::{
    verify_area_bound, verify_ratiorm, verify_tz_identity, Epsilon, Verdict, VerificationReport,
};
use bec_core::{Budgets, RmParams};
use proptest::prelude::*;

fn rm(n: usize, d: usize) -> bec_core::LinearCode {
    rm_code(RmParams::new(n, d).unwrap(), &Budgets::default()).unwrap()
}

#[test]
fn text_round_trip_keeps_rm_origin() {
    let code = rm(4, 2);
    let text = format_code(&code, &["built in a test".to_string()]);
    let back = parse_code(&text).unwrap();
    assert_eq!(back.rm_params(), Some(RmParams::new(4, 2).unwrap()));
    assert_eq!(back.generator(), code.generator());
    // editing a row drops the RM marker
    let tampered = text.replacen("1111111111111111", "1111111111111110", 1);
    assert_ne!(tampered, text);
    let back = parse_code(&tampered).unwrap();
    assert_eq!(back.rm_params(), None);
}

#[test]
fn weight_table_json_round_trip() {
    let b = Budgets::default();
    let table = exact_weight_table(&rm(3, 1), 4, &b).unwrap();
    let back = WeightTable::from_json(&table.to_json()).unwrap();
    for r in 1..=4 {
        assert_eq!(table.row(r).unwrap(), back.row(r).unwrap());
    }
}

#[test]
fn monte_carlo_tracks_exact_curve() {
    let b = Budgets::default();
    let code = rm(4, 1);
    let table = exact_weight_table(&code, 2, &b).unwrap();
    for p in [0.4, 0.6] {
        let exact = exact_fr(&table, 1, p).unwrap();
        let est = mc_fr(&code, p, 1, 40_000, 11).unwrap();
        assert!((est.estimate - exact).abs() <= 4.0 * est.stderr + 1e-12);
    }
}

#[test]
fn reports_recompute_after_serialization() {
    let b = Budgets::default();
    let code = rm(3, 1);
    let dr = support_weight(&code, 2, &b).unwrap();
    assert_eq!(dr.kind, BoundKind::Exact);
    let reports = [
        verify_area_bound(&code, 2, &dr, &b).unwrap(),
        verify_tz_identity(&code, 1, &parse_grid("0.1:0.9:0.2").unwrap(), &b).unwrap(),
        verify_ratiorm(1600, 800, &Epsilon::parse("0.5").unwrap(), None, false).unwrap(),
    ];
    for r in reports {
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.claim_id);
        let text = serde_json::to_string(&r.to_json()).unwrap();
        let back = VerificationReport::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.recompute_verdict().unwrap(), Verdict::Pass);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_curves_are_nested(n in 2usize..=4, d in 0usize..=4, p in 0.0f64..=1.0) {
        prop_assume!(d <= n);
        let code = rm(n, d);
        let k = code.dim();
        let table = exact_weight_table(&code, k, &Budgets::default()).unwrap();
        let mut prev = 1.0;
        for r in 1..=k {
            let f = exact_fr(&table, r, p).unwrap();
            prop_assert!(f <= prev + 1e-12);
            prev = f;
        }
    }
}
