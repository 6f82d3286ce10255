//! Exact checks of the per-code identities and bounds, by exhaustive
//! enumeration of all 2^N erasure patterns.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::report::{Check, Relation, ValueKind, VerificationReport};
use crate::analysis::{
    exact_fr_rational, exact_integral_gap, fr_derivative_rational, HTable, WeightTable,
};
use crate::budget::Budgets;
use crate::codes::{BoundKind, LinearCode, SupportWeightResult};
use crate::erasure::PatternCensus;
use crate::error::{Error, Result};
use crate::exact::{abs_diff_f64, format_rational, Interval};

pub(crate) fn describe_code(code: &LinearCode) -> Value {
    json!({
        "N": code.len(),
        "k": code.dim(),
        "family": code.rm_params().map_or_else(|| "custom".to_string(), |p| p.to_string()),
    })
}

fn grid_json(grid: &[BigRational]) -> Value {
    Value::from(grid.iter().map(format_rational).collect::<Vec<_>>())
}

fn check_grid(grid: &[BigRational]) -> Result<()> {
    let (zero, one) = (BigRational::zero(), BigRational::one());
    if grid.is_empty() {
        return Err(Error::input("empty p grid"));
    }
    if let Some(p) = grid.iter().find(|p| **p < zero || **p > one) {
        return Err(Error::input(format!(
            "grid point {} outside [0, 1]",
            format_rational(p)
        )));
    }
    Ok(())
}

fn check_r(code: &LinearCode, r: usize) -> Result<()> {
    if r == 0 || r > code.dim() {
        return Err(Error::input(format!(
            "r = {r} must lie in 1..={}",
            code.dim()
        )));
    }
    Ok(())
}

/// Pr[h_{g_r} != 0] = f_r(p) - f_{r+1}(p) at every grid point, as exact rationals.
pub fn verify_tz_identity(
    code: &LinearCode,
    r: usize,
    grid: &[BigRational],
    budgets: &Budgets,
) -> Result<VerificationReport> {
    check_r(code, r)?;
    check_grid(grid)?;
    let census = PatternCensus::new(code, budgets)?;
    verify_tz_with(&census, code, r, grid)
}

pub(crate) fn verify_tz_with(
    census: &PatternCensus,
    code: &LinearCode,
    r: usize,
    grid: &[BigRational],
) -> Result<VerificationReport> {
    let table = WeightTable::from_census(census, r + 1);
    let h = HTable::from_census(census, r);
    let mut report = VerificationReport::new(
        "tz-identity",
        json!({"code": describe_code(code), "r": r, "grid": grid_json(grid)}),
    );
    let mut worst = 0.0f64;
    for p in grid {
        let lhs = h.nonzero_probability(p);
        let rhs = exact_fr_rational(&table, r, p)? - exact_fr_rational(&table, r + 1, p)?;
        worst = worst.max(abs_diff_f64(&lhs, &rhs));
        report.check(Check::new(
            format!(
                "Pr[h != 0] = f_{r} - f_{} at p = {}",
                r + 1,
                format_rational(p)
            ),
            &Interval::exact(lhs),
            Relation::Eq,
            &Interval::exact(rhs),
        ));
    }
    report.note("max_abs_discrepancy", worst, ValueKind::Exact);
    Ok(report.finish(format!(
        "Exhaustive enumeration of all 2^{} patterns; both sides evaluated as exact rationals on {} grid points.",
        code.len(),
        grid.len()
    )))
}

/// p * f_r'(p) = E[h_{g_r}] at every grid point, with the derivative taken
/// analytically from the weight table.
pub fn verify_margulis_russo(
    code: &LinearCode,
    r: usize,
    grid: &[BigRational],
    budgets: &Budgets,
) -> Result<VerificationReport> {
    if r > code.dim() {
        return Err(Error::input(format!("r = {r} exceeds k = {}", code.dim())));
    }
    check_grid(grid)?;
    let census = PatternCensus::new(code, budgets)?;
    verify_russo_with(&census, code, r, grid)
}

pub(crate) fn verify_russo_with(
    census: &PatternCensus,
    code: &LinearCode,
    r: usize,
    grid: &[BigRational],
) -> Result<VerificationReport> {
    let table = WeightTable::from_census(census, r);
    let h = HTable::from_census(census, r);
    let mut report = VerificationReport::new(
        "margulis-russo",
        json!({"code": describe_code(code), "r": r, "grid": grid_json(grid)}),
    );
    let mut worst = 0.0f64;
    for p in grid {
        let lhs = p * fr_derivative_rational(&table, r, p)?;
        let rhs = h.expectation(p);
        worst = worst.max(abs_diff_f64(&lhs, &rhs));
        report.check(Check::new(
            format!("p f_{r}'(p) = E[h] at p = {}", format_rational(p)),
            &Interval::exact(lhs),
            Relation::Eq,
            &Interval::exact(rhs),
        ));
    }
    report.note("max_abs_discrepancy", worst, ValueKind::Exact);
    Ok(report.finish(format!(
        "Derivative of the weight-table polynomial against the exhaustive expectation of h_g over all 2^{} \
         patterns, as exact rationals.",
        code.len()
    )))
}

fn weight_r(dr: &SupportWeightResult, r: usize) -> Result<()> {
    if dr.r != r.into() {
        return Err(Error::input(format!(
            "d_r supplied for r = {} but checking r = {r}",
            dr.r
        )));
    }
    if dr.value.is_zero() {
        return Err(Error::input("d_r must be positive"));
    }
    Ok(())
}

/// nu_{g_r} >= d_r(C). A lower-bound d_r gives the implied weaker check.
pub fn verify_nu_bound(
    code: &LinearCode,
    r: usize,
    dr: &SupportWeightResult,
    budgets: &Budgets,
) -> Result<VerificationReport> {
    check_r(code, r)?;
    weight_r(dr, r)?;
    let census = PatternCensus::new(code, budgets)?;
    verify_nu_with(&census, code, r, dr)
}

pub(crate) fn verify_nu_with(
    census: &PatternCensus,
    code: &LinearCode,
    r: usize,
    dr: &SupportWeightResult,
) -> Result<VerificationReport> {
    let nu = census.nu(r)?;
    let mut report =
        VerificationReport::new("nu-bound", json!({"code": describe_code(code), "r": r}));
    report.note("nu", nu, ValueKind::Exact);
    report.note_weight("d_r", dr);
    report.check(Check::new(
        "nu_{g_r} >= d_r",
        &Interval::integer(nu as i64),
        Relation::Ge,
        &Interval::exact(BigRational::from_integer(BigInt::from(dr.value.clone()))),
    ));
    Ok(report.finish(lower_bound_note(
        dr,
        format!("nu_{{g_{r}}} = {nu} by exhaustive enumeration of the flip counts h_g."),
    )))
}

/// ∫(f_r - f_{r+1}) dp <= 1 / d_r as exact rationals.
pub fn verify_area_bound(
    code: &LinearCode,
    r: usize,
    dr: &SupportWeightResult,
    budgets: &Budgets,
) -> Result<VerificationReport> {
    check_r(code, r)?;
    weight_r(dr, r)?;
    let census = PatternCensus::new(code, budgets)?;
    verify_area_with(&WeightTable::from_census(&census, r + 1), code, r, dr)
}

pub(crate) fn verify_area_with(
    table: &WeightTable,
    code: &LinearCode,
    r: usize,
    dr: &SupportWeightResult,
) -> Result<VerificationReport> {
    let gap = exact_integral_gap(table, r)?;
    let bound = BigRational::new(BigInt::one(), BigInt::from(dr.value.clone()));
    let mut report =
        VerificationReport::new("area-bound", json!({"code": describe_code(code), "r": r}));
    report.note("integral_gap", format_rational(&gap), ValueKind::Exact);
    report.note_weight("d_r", dr);
    report.note("inverse_d_r", format_rational(&bound), dr.kind.into());
    report.check(Check::new(
        "integral of f_r - f_{r+1} <= 1/d_r",
        &Interval::exact(gap),
        Relation::Le,
        &Interval::exact(bound),
    ));
    Ok(report.finish(lower_bound_note(
        dr,
        "Closed-form Beta integrals of the exact weight table.".to_string(),
    )))
}

fn lower_bound_note(dr: &SupportWeightResult, base: String) -> String {
    match dr.kind {
        BoundKind::Exact => format!("{base} d_r is exact (brute force)."),
        BoundKind::LowerBound => format!(
            "{base} d_r is a lower bound, so the checked inequality is the implied weaker one (1/bound >= 1/d_r)."
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{dr_bruteforce, rm_code, RmParams};
    use crate::exact::parse_grid;
    use crate::gf2::BitMatrix;
    use crate::verify::Verdict;

    fn rm(n: usize, d: usize) -> LinearCode {
        rm_code(RmParams::new(n, d).unwrap(), &Budgets::default()).unwrap()
    }

    fn grid() -> Vec<BigRational> {
        parse_grid("0.1:0.9:0.1").unwrap()
    }

    fn dr(code: &LinearCode, r: usize) -> SupportWeightResult {
        dr_bruteforce(code, r, &Budgets::default()).unwrap()
    }

    #[test]
    fn tz_identity_examples() {
        let b = Budgets::default();
        let rep = verify_tz_identity(&rm(3, 0), 1, &grid(), &b).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        for r in 1..=4 {
            let rep = verify_tz_identity(&rm(3, 1), r, &grid(), &b).unwrap();
            assert_eq!(rep.verdict, Verdict::Pass, "r = {r}");
            assert_eq!(rep.recompute_verdict().unwrap(), Verdict::Pass);
        }
        assert!(verify_tz_identity(&rm(3, 1), 0, &grid(), &b).is_err());
        assert!(verify_tz_identity(&rm(3, 1), 5, &grid(), &b).is_err());
    }

    #[test]
    fn russo_examples() {
        let b = Budgets::default();
        let g = parse_grid("0:1:0.125").unwrap();
        assert_eq!(
            verify_margulis_russo(&rm(3, 0), 1, &g, &b).unwrap().verdict,
            Verdict::Pass
        );
        for r in 0..=4 {
            assert_eq!(
                verify_margulis_russo(&rm(3, 1), r, &grid(), &b)
                    .unwrap()
                    .verdict,
                Verdict::Pass
            );
        }
    }

    #[test]
    fn nu_examples() {
        let b = Budgets::default();
        let rep = rm(3, 0);
        assert_eq!(
            verify_nu_bound(&rep, 1, &dr(&rep, 1), &b).unwrap().verdict,
            Verdict::Pass
        );
        let c = rm(3, 2);
        for r in [1, 3] {
            let report = verify_nu_bound(&c, r, &dr(&c, r), &b).unwrap();
            assert_eq!(report.verdict, Verdict::Pass);
        }
        assert!(verify_nu_bound(&c, 2, &dr(&c, 1), &b).is_err());
    }

    #[test]
    fn area_examples() {
        let b = Budgets::default();
        let rep = rm(3, 0);
        let report = verify_area_bound(&rep, 1, &dr(&rep, 1), &b).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.intermediates[0].value, "1/9");
        let c = rm(3, 2);
        for r in 1..=c.dim() {
            assert_eq!(
                verify_area_bound(&c, r, &dr(&c, r), &b).unwrap().verdict,
                Verdict::Pass
            );
        }
    }

    #[test]
    fn too_small_d_r_fails() {
        // the gap for the length-8 repetition code is 1/9, which exceeds 1/10
        let code = LinearCode::new(BitMatrix::from_fn(1, 8, |_, _| true)).unwrap();
        let fake = SupportWeightResult {
            r: 1u32.into(),
            value: 10u32.into(),
            kind: BoundKind::Exact,
            witness: None,
        };
        let report = verify_area_bound(&code, 1, &fake, &Budgets::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
    }
}
