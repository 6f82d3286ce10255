//! Statistical checks of the threshold theorems: the θ_1 / θ_N0 gap, the
//! bit-to-block transfer and the bit-error decay below p*.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::lemmas::describe_code;
use super::report::{float, float_range, Check, Relation, ValueKind, VerificationReport};
use crate::analysis::{
    estimate_pstar, exact_theta, theta_with, BisectionConfig, McConfig, MonteCarlo, WeightTable,
};
use crate::budget::Budgets;
use crate::codes::{
    rm_code, rm_dr_lower_bound, support_weight, BoundKind, LinearCode, RmParams,
    SupportWeightResult,
};
use crate::erasure::PatternCensus;
use crate::error::{Error, Result};
use crate::exact::{format_rational, from_biguint, to_f64, Interval};

/// Margin applied to Monte Carlo estimates, in standard errors.
const SIGMAS: f64 = 4.0;
/// Guard added to sampled noise levels so that quantization of p to 2^-32
/// never moves them below the intended value.
const P_GUARD: f64 = 1.0 / 4_294_967_296.0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaTerm {
    pub r: usize,
    pub value: String,
    pub kind: BoundKind,
}

/// γ = sqrt(Σ_{r<N0} 1/d_r). With any lower-bound term, γ is an upper bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaValue {
    pub n0: usize,
    pub terms: Vec<GammaTerm>,
    #[serde(serialize_with = "ser_rational")]
    pub gamma_sq: BigRational,
    pub gamma: f64,
    pub kind: BoundKind,
}

fn ser_rational<S: serde::Serializer>(
    q: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

impl GammaValue {
    pub fn enclosure(&self, bits: u32) -> Interval {
        Interval::exact(self.gamma_sq.clone()).sqrt(bits)
    }

    pub fn value_kind(&self) -> ValueKind {
        match self.kind {
            BoundKind::Exact => ValueKind::Exact,
            BoundKind::LowerBound => ValueKind::UpperBound,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("gamma serializes")
    }
}

/// Where the d_r values for γ come from.
#[derive(Debug, Clone, Copy)]
pub enum GammaSource<'a> {
    Code(&'a LinearCode),
    Rm(RmParams),
}

fn weights_up_to(
    source: GammaSource<'_>,
    last: usize,
    budgets: &Budgets,
) -> Result<Vec<SupportWeightResult>> {
    let owned;
    let code = match source {
        GammaSource::Code(c) => c,
        GammaSource::Rm(params) => match rm_code(params, budgets) {
            Ok(c) => {
                owned = c;
                &owned
            }
            Err(e) if e.is_resource_limit() => {
                return (1..=last)
                    .map(|r| rm_dr_lower_bound(params.n, params.d, &BigUint::from(r)))
                    .collect();
            }
            Err(e) => return Err(e),
        },
    };
    if last > code.dim() {
        return Err(Error::input(format!(
            "r = {last} exceeds k = {}",
            code.dim()
        )));
    }
    (1..=last)
        .map(|r| support_weight(code, r, budgets))
        .collect()
}

pub fn compute_gamma(source: GammaSource<'_>, n0: usize, budgets: &Budgets) -> Result<GammaValue> {
    if n0 == 0 {
        return Err(Error::input("N0 must be at least 1"));
    }
    let k = match source {
        GammaSource::Code(c) => BigUint::from(c.dim()),
        GammaSource::Rm(p) => crate::codes::rm_dimension(p.n, p.d)?,
    };
    if BigUint::from(n0) > k {
        return Err(Error::input(format!("N0 = {n0} exceeds k = {k}")));
    }
    let weights = weights_up_to(source, n0 - 1, budgets)?;
    let mut gamma_sq = BigRational::zero();
    let mut kind = BoundKind::Exact;
    let mut terms = Vec::with_capacity(weights.len());
    for (i, w) in weights.iter().enumerate() {
        gamma_sq += BigRational::new(BigInt::one(), BigInt::from(w.value.clone()));
        if w.kind == BoundKind::LowerBound {
            kind = BoundKind::LowerBound;
        }
        terms.push(GammaTerm {
            r: i + 1,
            value: w.value.to_string(),
            kind: w.kind,
        });
    }
    let gamma = to_f64(&gamma_sq).sqrt();
    Ok(GammaValue {
        n0,
        terms,
        gamma_sq,
        gamma,
        kind,
    })
}

fn integer(x: usize) -> Interval {
    Interval::exact(BigRational::from_integer(BigInt::from(x)))
}

/// θ_1(α + γ) >= θ_N0(α) - γ, with θ estimated by bisection and the
/// bracket margins applied against the inequality.
pub fn verify_straightshot(
    code: &LinearCode,
    n0: usize,
    alpha: f64,
    cfg: BisectionConfig,
    budgets: &Budgets,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "straightshot",
        json!({"code": describe_code(code), "N0": n0, "alpha": alpha, "trials": cfg.trials, "seed": cfg.seed,
               "p_tolerance": cfg.tolerance}),
    );
    report.hypothesis(Check::new(
        "N0 >= 1",
        &integer(n0),
        Relation::Ge,
        &integer(1),
    ));
    report.hypothesis(Check::new(
        "N0 <= dim C",
        &integer(n0),
        Relation::Le,
        &integer(code.dim()),
    ));
    report.hypothesis(Check::new(
        "alpha >= 0",
        &float(alpha),
        Relation::Ge,
        &integer(0),
    ));
    if !report.applicable() {
        return Ok(report.finish("N0 outside [1, dim C] or alpha negative."));
    }
    let gamma = compute_gamma(GammaSource::Code(code), n0, budgets)?;
    report.note(
        "gamma_sq",
        format_rational(&gamma.gamma_sq),
        gamma.value_kind(),
    );
    report.note("gamma", gamma.gamma, gamma.value_kind());
    report.note(
        "gamma_terms",
        serde_json::to_value(&gamma.terms).expect("terms"),
        gamma.value_kind(),
    );
    report.hypothesis(Check::refine("alpha + gamma <= 1", Relation::Le, |bits| {
        (float(alpha).add(&gamma.enclosure(bits)), integer(1))
    }));
    if !report.applicable() {
        return Ok(report.finish(format!(
            "gamma = {:.6} leaves no admissible alpha: alpha + gamma exceeds 1.",
            gamma.gamma
        )));
    }
    if n0 == 1 {
        report.check(Check::new(
            "theta_1(alpha) - theta_1(alpha) >= -gamma",
            &integer(0),
            Relation::Ge,
            &integer(0),
        ));
        return Ok(report.finish("N0 = 1: gamma = 0 and both sides are theta_1(alpha)."));
    }
    // γ' >= γ, rounded up to a float; the checked statement with γ' is implied by the one with γ
    let g_hi = to_f64(&gamma.enclosure(64).hi);
    let g_up = f64::from_bits(g_hi.to_bits() + 1);
    let level = alpha + g_up;
    let shift = float(level).sub(&float(alpha));
    report.note("gamma_used", shift.midpoint_f64(), ValueKind::UpperBound);
    if alpha == 0.0 {
        report.check(Check::new(
            "theta_1(gamma) >= theta_N0(0) - gamma",
            &float_range(0.0, 1.0),
            Relation::Ge,
            &integer(0).sub(&shift),
        ));
        return Ok(report.finish("alpha = 0: theta_N0(0) = 0, so the right side is negative."));
    }
    let mc = MonteCarlo::new(code);
    let upper = theta_with(&mc, n0, alpha, cfg)?;
    report.note_mc(
        "theta_N0(alpha)",
        upper.p_hat,
        0.5 * (upper.p_high - upper.p_low),
    );
    let lhs = if level >= 1.0 {
        report.note("theta_1(alpha + gamma)", 1.0, ValueKind::Exact);
        integer(1)
    } else {
        let lower = theta_with(&mc, 1, level, cfg)?;
        report.note_mc(
            "theta_1(alpha + gamma)",
            lower.p_hat,
            0.5 * (lower.p_high - lower.p_low),
        );
        report.note(
            "theta_1_bracket",
            json!([lower.p_low, lower.p_high]),
            ValueKind::MonteCarlo,
        );
        float_range(lower.p_low, lower.p_high)
    };
    report.note(
        "theta_N0_bracket",
        json!([upper.p_low, upper.p_high]),
        ValueKind::MonteCarlo,
    );
    let rhs = float_range(upper.p_low, upper.p_high).sub(&shift);
    report.check(Check::new(
        "theta_1(alpha + gamma) >= theta_N0(alpha) - gamma [monte carlo]",
        &lhs,
        Relation::Ge,
        &rhs,
    ));

    if code.len() <= budgets.exhaustive_bits.min(30) {
        let census = PatternCensus::new(code, budgets)?;
        let table = WeightTable::from_census(&census, n0);
        let tol = 1e-9;
        let t_upper = exact_theta(&table, n0, alpha, tol)?;
        let t_lower = if level >= 1.0 {
            1.0
        } else {
            exact_theta(&table, 1, level, tol)?
        };
        report.note("exact theta_N0(alpha)", t_upper, ValueKind::Exact);
        report.note("exact theta_1(alpha + gamma)", t_lower, ValueKind::Exact);
        report.check(Check::new(
            "theta_1(alpha + gamma) >= theta_N0(alpha) - gamma [exact table]",
            &float_range(t_lower - tol, t_lower + tol),
            Relation::Ge,
            &float_range(t_upper - tol, t_upper + tol).sub(&shift),
        ));
    }
    Ok(report.finish(format!(
        "theta estimated by bisection ({} trials per probe); the left side uses its lower bracket end and the right \
         side its upper end. gamma is {}.",
        cfg.trials,
        match gamma.kind {
            BoundKind::Exact => "exact",
            BoundKind::LowerBound => "an upper bound from lower-bound d_r, so the implied weaker inequality is checked",
        }
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitToBlockConfig {
    pub trials: u64,
    pub seed: u64,
    /// Maximum number of coordinates over which the bit error is maximized.
    pub coordinates: usize,
}

/// Evenly spaced coordinates, or all of them when `m >= len`.
pub fn spread_coordinates(len: usize, m: usize) -> Vec<usize> {
    if m >= len {
        return (0..len).collect();
    }
    (0..m).map(|j| j * len / m).collect()
}

fn rational_of(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// The bit-to-block transfer at noise level p: with δ the maximal bit error
/// at p and Δ = min_{r <= √δ N} d_r / r, block error at p - sqrt(log N / Δ)
/// is at most √δ + sqrt(log N / Δ).
pub fn verify_bittoblock(
    code: &LinearCode,
    p: f64,
    cfg: BitToBlockConfig,
    budgets: &Budgets,
) -> Result<VerificationReport> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("p = {p} outside [0, 1]")));
    }
    let mc_cfg = McConfig::new(cfg.trials, cfg.seed)?;
    let n = code.len();
    let k = code.dim();
    let mut report = VerificationReport::new(
        "bittoblock",
        json!({"code": describe_code(code), "p": p, "trials": cfg.trials, "seed": cfg.seed,
               "coordinates": cfg.coordinates}),
    );
    report.hypothesis(Check::new(
        "N >= 10",
        &integer(n),
        Relation::Ge,
        &integer(10),
    ));
    if !report.applicable() {
        return Ok(report.finish("The theorem assumes N >= 10."));
    }
    let mc = MonteCarlo::new(code);
    let coords = spread_coordinates(n, cfg.coordinates.max(1));
    let bits = mc.bit_errors(p, &coords, mc_cfg)?;
    let ucbs: Vec<f64> = bits.iter().map(|e| e.upper(SIGMAS)).collect();
    let delta = ucbs.iter().copied().fold(0.0, f64::max);
    let (lo_est, hi_est) = bits.iter().fold((f64::INFINITY, 0.0f64), |(a, b), e| {
        (a.min(e.estimate), b.max(e.estimate))
    });
    report.note("coordinates_sampled", coords.len(), ValueKind::Exact);
    report.note("delta", delta, ValueKind::UpperBound);
    report.note("bit_error_spread", hi_est - lo_est, ValueKind::MonteCarlo);

    // √δ N and its integer part, exactly
    let delta_q = rational_of(delta);
    let nn = BigRational::from_integer(BigInt::from(n));
    let delta_n2 = &delta_q * &nn * &nn;
    let n0 = delta_n2
        .floor()
        .to_integer()
        .to_biguint()
        .expect("nonnegative")
        .sqrt();
    let n0 = n0.to_usize().unwrap_or(usize::MAX);
    report.note("N0", n0, ValueKind::Exact);
    report.hypothesis(Check::new(
        "(dim C)^2 >= delta N^2",
        &integer(k * k),
        Relation::Ge,
        &Interval::exact(delta_n2.clone()),
    ));
    report.hypothesis(Check::new(
        "floor(sqrt(delta) N) >= 1 (Delta is a minimum over a nonempty range)",
        &integer(n0),
        Relation::Ge,
        &integer(1),
    ));
    if !report.applicable() {
        return Ok(report.finish(format!(
            "Hypotheses fail at p = {p}: delta = {delta:.3e} gives sqrt(delta) N = {:.3} against dim C = {k}.",
            to_f64(&delta_n2).sqrt()
        )));
    }

    let weights = weights_up_to(GammaSource::Code(code), n0, budgets)?;
    let (arg, big_delta) = weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            (
                i + 1,
                from_biguint(&w.value) / BigRational::from_integer(BigInt::from(i + 1)),
            )
        })
        .min_by(|a, b| a.1.cmp(&b.1))
        .expect("n0 >= 1");
    let any_lower = weights.iter().any(|w| w.kind == BoundKind::LowerBound);
    let delta_kind = if any_lower {
        ValueKind::LowerBound
    } else {
        ValueKind::Exact
    };
    report.note("Delta", format_rational(&big_delta), delta_kind);
    report.note("Delta_argmin_r", arg, ValueKind::Exact);

    let log_n = |bits: u32| Interval::log2_int(&BigUint::from(n), bits);
    let shift = |bits: u32| {
        log_n(bits)
            .scale(&(BigRational::one() / &big_delta))
            .sqrt(bits)
    };
    let sqrt_delta = |bits: u32| Interval::exact(delta_q.clone()).sqrt(bits);
    let bound = |bits: u32| sqrt_delta(bits).add(&shift(bits));
    let s = shift(64);
    report.note("shift", s.midpoint_f64(), delta_kind.into_upper());
    report.note("bound", bound(64).midpoint_f64(), delta_kind.into_upper());
    let trivial = bound(64).cmp_to(&BigRational::one()) == Some(std::cmp::Ordering::Greater);
    report.note("bound_exceeds_one", trivial, ValueKind::Exact);

    let q = Interval::exact(rational_of(p)).sub(&s);
    let lhs = if q.hi <= BigRational::zero() {
        report.note("shifted_p_clipped", true, ValueKind::Exact);
        report.note("block_error", 0.0, ValueKind::Exact);
        integer(0)
    } else {
        let p_sample = (to_f64(&q.hi) + P_GUARD).min(1.0);
        let block = mc.fr(p_sample, 1, mc_cfg)?;
        report.note("shifted_p", p_sample, ValueKind::UpperBound);
        report.note_mc("block_error", block.estimate, SIGMAS * block.stderr);
        report.note(
            "block_error_ucb",
            block.upper(SIGMAS),
            ValueKind::MonteCarlo,
        );
        float(block.lower(SIGMAS))
    };
    report.check(Check::refine(
        "block error at p - shift <= sqrt(delta) + shift",
        Relation::Le,
        |bits| (lhs.clone(), bound(bits)),
    ));
    let clipped = q.hi <= BigRational::zero();
    Ok(report.finish(format!(
        "delta is the largest {SIGMAS}-sigma upper confidence bound over {} coordinates{}; Delta {} over r <= {n0}. \
         The block-error side uses its lower confidence bound.{}{}",
        coords.len(),
        if coords.len() < n { " (sampled; exact max over all coordinates relies on transitivity)" } else { "" },
        if any_lower { "uses lower-bound d_r, which enlarges the shift and weakens the claim consistently" } else { "is exact" },
        if clipped { " The shifted noise level is negative and was clipped to 0, so the check is vacuous." } else { "" },
        if trivial { " The right side exceeds 1, so the claim is trivially true." } else { "" },
    )))
}

trait UpperKind {
    fn into_upper(self) -> ValueKind;
}

impl UpperKind for ValueKind {
    /// A quantity decreasing in Δ becomes an upper bound when Δ is a lower bound.
    fn into_upper(self) -> ValueKind {
        match self {
            ValueKind::LowerBound => ValueKind::UpperBound,
            other => other,
        }
    }
}

/// A noise level, absolute or relative to the estimated p*.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseLevel {
    Absolute(f64),
    BelowPstar(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BitCapacityConfig {
    pub pstar: BisectionConfig,
    pub trials: u64,
    pub seed: u64,
    /// Coordinates sampled to report the spread of bit errors.
    pub spread_coordinates: usize,
    pub spread_trials: u64,
}

/// Bit-error decay below p*: Pr_p[i in supp S_C(x)] <= e^{-(p* - p) log(N-1)}.
pub fn verify_bitcapacity(
    code: &LinearCode,
    levels: &[NoiseLevel],
    i: usize,
    cfg: BitCapacityConfig,
) -> Result<VerificationReport> {
    let n = code.len();
    let mut report = VerificationReport::new(
        "bitcapacity",
        json!({"code": describe_code(code), "i": i, "levels": levels.iter().map(|l| match l {
                   NoiseLevel::Absolute(p) => json!(p),
                   NoiseLevel::BelowPstar(x) => json!(format!("pstar-{x}")),
               }).collect::<Vec<_>>(),
               "trials": cfg.trials, "seed": cfg.seed, "pstar_trials": cfg.pstar.trials,
               "pstar_tolerance": cfg.pstar.tolerance}),
    );
    let is_rm = usize::from(code.rm_params().is_some());
    report.hypothesis(Check::new(
        "code is Reed-Muller (doubly transitive)",
        &integer(is_rm),
        Relation::Eq,
        &integer(1),
    ));
    if !report.applicable() {
        return Ok(report.finish("The decay bound is checked only for Reed-Muller codes."));
    }
    let pstar = estimate_pstar(code, i, cfg.pstar)?;
    report.note_mc("pstar", pstar.p_hat, pstar.p_tolerance);
    report.note(
        "pstar_bracket",
        json!([pstar.p_low, pstar.p_high]),
        ValueKind::MonteCarlo,
    );
    let inflated = pstar.p_high;
    let log_n1 = ((n - 1) as f64).log2();
    let mc = MonteCarlo::new(code);
    let mc_cfg = McConfig::new(cfg.trials, cfg.seed)?;
    let mut first_p = None;
    for level in levels {
        let p = match *level {
            NoiseLevel::Absolute(p) => p,
            NoiseLevel::BelowPstar(x) => pstar.p_hat - x,
        };
        if !(0.0..=1.0).contains(&p) || p > pstar.p_hat {
            report.note(
                format!("skipped p = {p}"),
                "above estimated pstar or outside [0, 1]",
                ValueKind::Exact,
            );
            continue;
        }
        first_p.get_or_insert(p);
        let est = mc.bit_error(p, i, mc_cfg)?;
        let bound = (-(inflated - p) * log_n1).exp();
        report.note_mc(
            format!("bit_error at p = {p}"),
            est.estimate,
            SIGMAS * est.stderr,
        );
        report.note(format!("bound at p = {p}"), bound, ValueKind::UpperBound);
        report.note(
            format!("ucb_within_bound at p = {p}"),
            est.upper(SIGMAS) <= bound,
            ValueKind::MonteCarlo,
        );
        report.check(Check::new(
            format!("bit error lower confidence bound <= exp(-(pstar - p) log2(N-1)) at p = {p}"),
            &float(est.lower(SIGMAS)),
            Relation::Le,
            &float_range(bound * (1.0 - 1e-12), bound * (1.0 + 1e-12)),
        ));
    }
    if let Some(p) = first_p {
        let coords = spread_coordinates(n, cfg.spread_coordinates.max(1));
        let spread_cfg = McConfig::new(cfg.spread_trials.max(1), cfg.seed)?;
        let ests = mc.bit_errors(p, &coords, spread_cfg)?;
        let lo = ests
            .iter()
            .map(|e| e.estimate)
            .fold(f64::INFINITY, f64::min);
        let hi = ests.iter().map(|e| e.estimate).fold(0.0, f64::max);
        let se = ests.iter().map(|e| e.stderr).fold(0.0, f64::max);
        report.note_mc(
            format!("bit_error_spread at p = {p}"),
            hi - lo,
            2.0 * SIGMAS * se,
        );
    }
    Ok(report.finish(format!(
        "pstar estimated by bisection; the bound uses its upper confidence end {inflated:.5}, and each bit error is \
         compared through its {SIGMAS}-sigma lower confidence bound. log is base 2."
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::RmParams;
    use crate::verify::Verdict;

    fn rm(n: usize, d: usize) -> LinearCode {
        rm_code(RmParams::new(n, d).unwrap(), &Budgets::default()).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let b = Budgets::default();
        let g = compute_gamma(GammaSource::Code(&rm(3, 2)), 1, &b).unwrap();
        assert_eq!(g.gamma, 0.0);
        let g = compute_gamma(GammaSource::Code(&rm(3, 2)), 4, &b).unwrap();
        // d_1, d_2, d_3 = 2, 3, 4
        assert_eq!(g.gamma_sq, crate::exact::rational(13, 12));
        assert_eq!(g.kind, BoundKind::Exact);
        let g = compute_gamma(GammaSource::Rm(RmParams::new(10, 5).unwrap()), 64, &b).unwrap();
        assert_eq!(g.kind, BoundKind::LowerBound);
        assert!(g.terms.iter().all(|t| t.kind == BoundKind::LowerBound));
        assert_eq!(g.terms.len(), 63);
        assert!(compute_gamma(GammaSource::Code(&rm(3, 2)), 8, &b).is_err());
    }

    fn bis(trials: u64) -> BisectionConfig {
        BisectionConfig::new(trials, 7, 0.005).unwrap()
    }

    #[test]
    fn straightshot_trivial_and_not_applicable() {
        let b = Budgets::default();
        let r = verify_straightshot(&rm(3, 2), 1, 0.3, bis(100), &b).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        // γ = sqrt(13/12) > 1 leaves no admissible alpha
        let r = verify_straightshot(&rm(3, 2), 4, 0.3, bis(100), &b).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert_eq!(r.recompute_verdict().unwrap(), Verdict::NotApplicable);
    }

    #[test]
    fn straightshot_small_code_with_exact_cross_check() {
        // RM(4,1): d_1 = 8, so N0 = 2 gives γ = sqrt(1/8)
        let r = verify_straightshot(&rm(4, 1), 2, 0.3, bis(5000), &Budgets::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:#?}", r.checks);
        assert_eq!(r.checks.len(), 2);
        assert_eq!(r.recompute_verdict().unwrap(), Verdict::Pass);
    }

    #[test]
    fn bittoblock_degenerate_p_is_not_applicable() {
        let cfg = BitToBlockConfig {
            trials: 200,
            seed: 1,
            coordinates: 64,
        };
        let r = verify_bittoblock(&rm(4, 2), 0.0, cfg, &Budgets::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(!r.hypotheses.is_empty());
        let r = verify_bittoblock(&rm(3, 1), 0.2, cfg, &Budgets::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn bittoblock_rm63_below_pstar() {
        let code = rm(6, 3);
        let cfg = BitToBlockConfig {
            trials: 20_000,
            seed: 3,
            coordinates: 16,
        };
        let r = verify_bittoblock(&code, 0.3, cfg, &Budgets::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.narrative);
        assert_eq!(r.recompute_verdict().unwrap(), Verdict::Pass);
    }

    #[test]
    fn bitcapacity_rejects_non_rm_and_passes_at_pstar() {
        let code = LinearCode::new(crate::gf2::BitMatrix::identity(4)).unwrap();
        let cfg = BitCapacityConfig {
            pstar: bis(2000),
            trials: 2000,
            seed: 1,
            spread_coordinates: 4,
            spread_trials: 500,
        };
        assert_eq!(
            verify_bitcapacity(&code, &[NoiseLevel::BelowPstar(0.0)], 0, cfg)
                .unwrap()
                .verdict,
            Verdict::NotApplicable
        );
        let r = verify_bitcapacity(
            &rm(5, 2),
            &[NoiseLevel::BelowPstar(0.0), NoiseLevel::BelowPstar(0.1)],
            0,
            cfg,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:#?}", r);
    }

    #[test]
    fn spread_coordinates_cover_range() {
        assert_eq!(spread_coordinates(5, 64), vec![0, 1, 2, 3, 4]);
        assert_eq!(spread_coordinates(1024, 4), vec![0, 256, 512, 768]);
    }
}
