//! Exact checks of the Reed–Muller combinatorial lemmas at large n, decided
//! with rigorous rational enclosures of every logarithm and square root.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use super::report::{Check, Relation, ValueKind, VerificationReport};
use crate::codes::{binomial_prefix_sum, RmParams, WeiChain};
use crate::error::{Error, Result};
use crate::exact::{
    decide_ceil, decide_floor, format_rational, parse_rational, sqrt_log_n_over_n, sqrt_n_log_n,
    Interval,
};

/// ε = a + b·sqrt(log2 n / n), so that the thresholds appearing in the
/// hypotheses can be given exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Epsilon {
    pub rational: BigRational,
    pub sqrt_coef: BigRational,
}

impl Epsilon {
    pub fn rational(q: BigRational) -> Self {
        Epsilon {
            rational: q,
            sqrt_coef: BigRational::zero(),
        }
    }

    pub fn sqrt_multiple(c: BigRational) -> Self {
        Epsilon {
            rational: BigRational::zero(),
            sqrt_coef: c,
        }
    }

    /// Parses `0.25`, `1/4`, `6*sqrt(log(n)/n)` or `sqrt(log(n)/n)`.
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        const ROOT: &str = "sqrt(log(n)/n)";
        if let Some(coef) = compact.strip_suffix(ROOT) {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = if coef.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coef)?
            };
            return Ok(Epsilon::sqrt_multiple(c));
        }
        Ok(Epsilon::rational(parse_rational(&compact)?))
    }

    pub fn enclosure(&self, n: usize, bits: u32) -> Interval {
        let root = sqrt_log_n_over_n(n, bits).scale(&self.sqrt_coef);
        Interval::exact(self.rational.clone()).add(&root)
    }

    /// Sign of ε - c·sqrt(log2 n / n), exact when ε has no rational part.
    fn compare_root_multiple(&self, n: usize, c: &BigRational, name: &str) -> Check {
        let diff = Epsilon {
            rational: self.rational.clone(),
            sqrt_coef: &self.sqrt_coef - c,
        };
        if diff.rational.is_zero() {
            // both sides share the irrational factor, so compare coefficients
            let lhs = Interval::exact(self.sqrt_coef.clone());
            return Check::new(
                format!("{name} (coefficient of sqrt(log n / n))"),
                &lhs,
                Relation::Ge,
                &Interval::exact(c.clone()),
            );
        }
        Check::refine(name, Relation::Ge, |bits| {
            (self.enclosure(n, bits), sqrt_log_n_over_n(n, bits).scale(c))
        })
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.sqrt_coef.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.rational)),
            (true, false) => write!(f, "{}*sqrt(log(n)/n)", format_rational(&self.sqrt_coef)),
            (false, false) => write!(
                f,
                "{} + {}*sqrt(log(n)/n)",
                format_rational(&self.rational),
                format_rational(&self.sqrt_coef)
            ),
        }
    }
}

fn int(x: usize) -> Interval {
    Interval::exact(BigRational::from_integer(BigInt::from(x)))
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// d <= n/2 + sqrt(n log2 n).
fn upper_degree_hypothesis(n: usize, d: usize) -> Check {
    Check::refine("d <= n/2 + sqrt(n log n)", Relation::Le, |bits| {
        (
            int(d),
            Interval::exact(BigRational::new(BigInt::from(n), BigInt::from(2)))
                .add(&sqrt_n_log_n(n, bits)),
        )
    })
}

fn undecided(what: &str) -> Error {
    Error::input(format!("could not decide {what} at the maximum precision"))
}

/// ⌈5 sqrt(n log2 n)⌉, the smallest admissible t.
pub fn rmbounds_t_min(n: usize) -> Result<usize> {
    let t =
        decide_ceil(|bits| sqrt_n_log_n(n, bits).scale(&q(5))).ok_or_else(|| undecided("t_min"))?;
    t.to_usize().ok_or_else(|| Error::input("t_min overflows"))
}

/// Default sample of t in [t_min, d]: every ⌈(d - t_min)/20⌉ plus both endpoints.
pub fn rmbounds_default_ts(t_min: usize, d: usize) -> Vec<usize> {
    if t_min > d {
        return Vec::new();
    }
    let step = (d - t_min).div_ceil(20).max(1);
    let mut ts: Vec<usize> = (t_min..=d).step_by(step).collect();
    if ts.last() != Some(&d) {
        ts.push(d);
    }
    ts
}

/// For each t: |supp S_t| >= 2^{n-t} and dim S_t <= 2^{n-t} 2^{-(t²/n - t³/n²)/4}.
pub fn verify_rmbounds(n: usize, d: usize, ts: Option<&[usize]>) -> Result<VerificationReport> {
    let params = RmParams::new(n, d)?;
    let mut report = VerificationReport::new("rmbounds", json!({"n": n, "d": d, "t": ts}));
    report.hypothesis(upper_degree_hypothesis(n, d));
    let t_min = rmbounds_t_min(n)?;
    report.note("t_min", t_min, ValueKind::Exact);
    report.hypothesis(Check::new(
        "5 sqrt(n log n) <= d (t range nonempty)",
        &int(t_min),
        Relation::Le,
        &int(d),
    ));
    if !report.applicable() {
        return Ok(report.finish(format!("Hypotheses fail for {params}: the admissible t range [{t_min}, {d}] is empty or d is too large.")));
    }
    let ts = match ts {
        Some(ts) => {
            if let Some(&t) = ts.iter().find(|&&t| t < t_min || t > d) {
                return Err(Error::input(format!(
                    "t = {t} outside the admissible range [{t_min}, {d}]"
                )));
            }
            ts.to_vec()
        }
        None => rmbounds_default_ts(t_min, d),
    };
    let nn = q(n as i64);
    for &t in &ts {
        // the monomial x_1...x_t is 1 exactly on the 2^{n-t} points with x_1 = ... = x_t = 1,
        // and every polynomial in S_t vanishes elsewhere
        let support_log2 = int(n - t);
        report.check(Check::new(
            format!("log2 |supp S_{t}| >= n - t"),
            &support_log2,
            Relation::Ge,
            &int(n - t),
        ));
        let dim = binomial_prefix_sum(n - t, d - t);
        let tt = q(t as i64);
        let exponent = q((n - t) as i64) - (&tt * &tt / &nn - &tt * &tt * &tt / (&nn * &nn)) / q(4);
        report.check(Check::refine(
            format!("log2 dim S_{t} <= (n - t) - (t^2/n - t^3/n^2)/4"),
            Relation::Le,
            |bits| {
                (
                    Interval::log2_int(&dim, bits),
                    Interval::exact(exponent.clone()),
                )
            },
        ));
    }
    report.note("t_checked", ts.len(), ValueKind::Exact);
    Ok(report.finish(format!(
        "Both displays checked for {} values of t in [{t_min}, {d}]. Powers of two are compared through their \
         exponents: log2 of the integer dim S_t is enclosed in a rational interval and compared with the exact \
         rational exponent.",
        ts.len()
    )))
}

/// Checks ε ≥ 6 sqrt(log n / n), ε ≤ 1/2 and the degree bound.
fn ratiorm_hypotheses(report: &mut VerificationReport, n: usize, d: usize, eps: &Epsilon) {
    report.hypothesis(eps.compare_root_multiple(n, &q(6), "eps >= 6 sqrt(log n / n)"));
    report.hypothesis(Check::refine("eps <= 1/2", Relation::Le, |bits| {
        (
            eps.enclosure(n, bits),
            Interval::exact(BigRational::new(1.into(), 2.into())),
        )
    }));
    report.hypothesis(upper_degree_hypothesis(n, d));
}

/// Default r sample: powers of two and Wei dimensions up to 2^{n - εn}.
pub fn ratiorm_default_rs(chain: &WeiChain, n: usize, eps: &Epsilon) -> Result<Vec<BigUint>> {
    // r <= 2^{n - εn}  <=>  log2 r <= n - εn
    let cap = |bits: u32| int(n).sub(&eps.enclosure(n, bits).scale(&q(n as i64)));
    let max_pow = decide_floor(cap).ok_or_else(|| undecided("n - eps n"))?;
    let max_pow = max_pow.to_i64().unwrap_or(-1);
    let mut rs: Vec<BigUint> = (0..=max_pow.max(-1))
        .filter(|&j| j >= 0)
        .map(|j| BigUint::one() << j as usize)
        .collect();
    for dim in &chain.dims {
        let fits = Check::refine("", Relation::Le, |bits| {
            (Interval::log2_int(dim, bits), cap(bits))
        });
        match fits.outcome {
            super::Verdict::Pass => rs.push(dim.clone()),
            super::Verdict::Fail => {}
            _ => return Err(undecided("whether a Wei dimension fits")),
        }
    }
    rs.sort();
    rs.dedup();
    Ok(rs)
}

/// d_r(RM(n,d)) / r >= 2^{ε² n / 10} through the Wei-chain lower bound on d_r.
/// With `outside_hypotheses`, the inequality is evaluated even when the
/// hypotheses fail; the verdict stays not-applicable.
pub fn verify_ratiorm(
    n: usize,
    d: usize,
    eps: &Epsilon,
    rs: Option<&[BigUint]>,
    outside_hypotheses: bool,
) -> Result<VerificationReport> {
    let params = RmParams::new(n, d)?;
    let mut report = VerificationReport::new(
        "ratiorm",
        json!({"n": n, "d": d, "eps": eps.to_string(),
               "r": rs.map(|rs| rs.iter().map(|r| r.to_string()).collect::<Vec<_>>())}),
    );
    ratiorm_hypotheses(&mut report, n, d, eps);
    let applicable = report.applicable();
    if !applicable && !outside_hypotheses {
        return Ok(report.finish(format!("Hypotheses fail for {params} at eps = {eps}.")));
    }
    let chain = WeiChain::new(params);
    let rs = match rs {
        Some(rs) => rs.to_vec(),
        None => ratiorm_default_rs(&chain, n, eps)?,
    };
    let nn = q(n as i64);
    let target = |bits: u32| {
        let e = eps.enclosure(n, bits);
        e.mul(&e).scale(&(&nn / q(10)))
    };
    let mut worst: Option<f64> = None;
    for r in &rs {
        let (t, _) = chain.lower_bound(r)?;
        let check = Check::refine(
            format!("log2(d_r lower bound) - log2 r >= eps^2 n / 10 at r = {r} (t* = {t})"),
            Relation::Ge,
            |bits| (int(n - t).sub(&Interval::log2_int(r, bits)), target(bits)),
        );
        let lhs = parse_rational(&check.lhs.lo)
            .map(|x| crate::exact::to_f64(&x))
            .unwrap_or(f64::NAN);
        let rhs = parse_rational(&check.rhs.hi)
            .map(|x| crate::exact::to_f64(&x))
            .unwrap_or(f64::NAN);
        worst = Some(worst.map_or(lhs - rhs, |w: f64| w.min(lhs - rhs)));
        report.check(check);
    }
    report.note("r_checked", rs.len(), ValueKind::Exact);
    report.note(
        "min_margin_log2",
        worst.unwrap_or(f64::NAN),
        ValueKind::LowerBound,
    );
    let target_mid = target(64).midpoint_f64();
    report.note("eps_sq_n_over_10", target_mid, ValueKind::Exact);
    let mut narrative = format!(
        "Each sampled r is checked as (n - t*) - log2 r >= eps^2 n / 10, where 2^(n - t*) with t* = min{{t : dim S_t <= r}} \
         lower-bounds d_r; passing the lower-bound form implies the stated inequality. {} values of r checked.",
        rs.len()
    );
    if !applicable {
        narrative.push_str(" The hypotheses do not hold, so the checks are informational and the verdict is not-applicable.");
    }
    Ok(report.finish(narrative))
}

/// Reports which explicit hypotheses and proof-step inequalities of the
/// capacity theorem hold at (n, d, ε). The theorem itself is not asserted.
pub fn verify_rmcapacity_preconditions(
    n: usize,
    d: usize,
    eps: &Epsilon,
) -> Result<VerificationReport> {
    RmParams::new(n, d)?;
    if n < 2 {
        return Err(Error::input("n must be at least 2"));
    }
    let mut report = VerificationReport::new(
        "rmcapacity-pre",
        json!({"n": n, "d": d, "eps": eps.to_string()}),
    );
    let half = Interval::exact(BigRational::new(BigInt::from(n), BigInt::from(2)));
    report.hypothesis(Check::refine(
        "d >= n/2 - sqrt(n log n)",
        Relation::Ge,
        |bits| (int(d), half.sub(&sqrt_n_log_n(n, bits))),
    ));
    report.hypothesis(upper_degree_hypothesis(n, d));
    report.hypothesis(eps.compare_root_multiple(n, &q(20), "eps >= 20 sqrt(log n / n)"));
    report.hypothesis(Check::refine("eps <= 1", Relation::Le, |bits| {
        (eps.enclosure(n, bits), int(1))
    }));
    // 2^{-ε²n/100} < ε/4  <=>  -ε²n/100 < log2 ε - 2
    let eps_positive = Check::refine("eps > 0", Relation::Gt, |bits| {
        (eps.enclosure(n, bits), int(0))
    });
    let positive = eps_positive.outcome == super::Verdict::Pass;
    report.hypothesis(eps_positive);
    if positive {
        let nn = q(n as i64);
        report.hypothesis(Check::refine(
            "2^(-eps^2 n / 100) < eps / 4",
            Relation::Lt,
            |bits| {
                let e = eps.enclosure(n, bits);
                let lhs = e.mul(&e).scale(&(-&nn / q(100)));
                let log_e = Interval {
                    lo: Interval::log2(&e.lo, bits).lo,
                    hi: Interval::log2(&e.hi, bits).hi,
                };
                (lhs, log_e.sub(&int(2)))
            },
        ));
    }
    report.hypothesis(Check::new(
        "t <= d - 1 <= 2n/3 over the invoked range",
        &int(3 * d.saturating_sub(1)),
        Relation::Le,
        &int(2 * n),
    ));
    let failing: Vec<&str> = report
        .hypotheses
        .iter()
        .filter(|h| h.outcome != super::Verdict::Pass)
        .map(|h| h.name.as_str())
        .collect();
    let narrative = if failing.is_empty() {
        "All explicit inequalities hold. This is informational: the theorem holds for n large enough, which is not \
         quantified, so nothing is asserted at this n."
            .to_string()
    } else {
        format!(
            "Outside the theorem's regime; failing: {}. Reported, not asserted.",
            failing.join("; ")
        )
    };
    Ok(report.finish(narrative))
}
