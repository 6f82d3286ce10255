use std::fmt::Write;

use super::montecarlo::CurveEstimate;

pub const CURVE_CSV_HEADER: &str = "p,r,estimate,stderr,trials,seed";

/// Curve rows as CSV. `preamble` lines are written first as `# ` comments.
pub fn curve_csv(rows: &[CurveEstimate], preamble: &[String]) -> String {
    let mut out = String::new();
    for line in preamble {
        writeln!(out, "# {line}").unwrap();
    }
    writeln!(out, "{CURVE_CSV_HEADER}").unwrap();
    for e in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            e.p, e.r, e.estimate, e.stderr, e.trials, e.seed
        )
        .unwrap();
    }
    out
}
