use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::montecarlo::{CurveEstimate, McConfig, MonteCarlo};
use super::table::{exact_fr, WeightTable};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::words_for;

/// Width of the confidence margin, in standard errors.
pub const CONFIDENCE_SIGMAS: f64 = 4.0;

const TIE_NOTE: &str = "bisection on a common-random-number estimate; p_hat is the bracket midpoint with flat \
                        estimates resolved toward smaller p; [p_low, p_high] brackets the crossings of \
                        estimate +/- 4 stderr";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BisectionConfig {
    pub trials: u64,
    pub seed: u64,
    pub tolerance: f64,
}

impl BisectionConfig {
    pub fn new(trials: u64, seed: u64, tolerance: f64) -> Result<Self> {
        McConfig::new(trials, seed)?;
        if !(tolerance > 0.0 && tolerance < 0.5) {
            return Err(Error::input(format!(
                "p tolerance {tolerance} must lie in (0, 0.5)"
            )));
        }
        Ok(BisectionConfig {
            trials,
            seed,
            tolerance,
        })
    }

    fn mc(&self) -> McConfig {
        McConfig {
            trials: self.trials,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    /// `f_r` for curve thresholds, `bit_error[i]` for p*.
    pub quantity: String,
    pub r: usize,
    pub alpha: f64,
    pub p_hat: f64,
    pub p_tolerance: f64,
    pub p_low: f64,
    pub p_high: f64,
    pub trials: u64,
    pub seed: u64,
    pub probes: usize,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Target {
    Curve(usize),
    Bit(usize),
}

/// Monotone inversion with a probe cache shared across levels.
struct Search<'a> {
    mc: &'a MonteCarlo,
    cfg: BisectionConfig,
    target: Target,
    cache: HashMap<u64, CurveEstimate>,
}

impl<'a> Search<'a> {
    fn new(mc: &'a MonteCarlo, cfg: BisectionConfig, target: Target) -> Self {
        Search {
            mc,
            cfg,
            target,
            cache: HashMap::new(),
        }
    }

    fn probe(&mut self, p: f64) -> Result<CurveEstimate> {
        if let Some(e) = self.cache.get(&p.to_bits()) {
            return Ok(e.clone());
        }
        let e = match self.target {
            Target::Curve(r) => self.mc.fr(p, r, self.cfg.mc())?,
            Target::Bit(i) => self.mc.bit_error(p, i, self.cfg.mc())?,
        };
        self.cache.insert(p.to_bits(), e.clone());
        Ok(e)
    }

    /// Bracket [lo, hi] of the smallest p at which `level(estimate) >= alpha`.
    fn bisect(&mut self, alpha: f64, level: impl Fn(&CurveEstimate) -> f64) -> Result<(f64, f64)> {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while hi - lo > 2.0 * self.cfg.tolerance {
            let mid = 0.5 * (lo + hi);
            if level(&self.probe(mid)?) >= alpha {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok((lo, hi))
    }

    fn estimate(&mut self, alpha: f64) -> Result<ThresholdEstimate> {
        let (lo, hi) = self.bisect(alpha, |e| e.estimate)?;
        let (low, _) = self.bisect(alpha, |e| e.estimate + CONFIDENCE_SIGMAS * e.stderr)?;
        let (_, high) = self.bisect(alpha, |e| e.estimate - CONFIDENCE_SIGMAS * e.stderr)?;
        let (quantity, r) = match self.target {
            Target::Curve(r) => (format!("f_{r}"), r),
            Target::Bit(i) => (format!("bit_error[{i}]"), i),
        };
        Ok(ThresholdEstimate {
            quantity,
            r,
            alpha,
            p_hat: 0.5 * (lo + hi),
            p_tolerance: 0.5 * (hi - lo),
            p_low: low.min(lo),
            p_high: high.max(hi),
            trials: self.cfg.trials,
            seed: self.cfg.seed,
            probes: self.cache.len(),
            note: TIE_NOTE.to_string(),
        })
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::input(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    Ok(())
}

fn check_r(mc: &MonteCarlo, r: usize) -> Result<()> {
    if r == 0 || r > mc.code_dim() {
        return Err(Error::input(format!(
            "r = {r} must lie in 1..={}",
            mc.code_dim()
        )));
    }
    Ok(())
}

/// θ_r(α) = f_r^{-1}(α), by bisection on the Monte Carlo estimate of f_r.
pub fn estimate_theta(
    code: &LinearCode,
    r: usize,
    alpha: f64,
    cfg: BisectionConfig,
) -> Result<ThresholdEstimate> {
    let mc = MonteCarlo::new(code);
    theta_with(&mc, r, alpha, cfg)
}

pub(crate) fn theta_with(
    mc: &MonteCarlo,
    r: usize,
    alpha: f64,
    cfg: BisectionConfig,
) -> Result<ThresholdEstimate> {
    check_alpha(alpha)?;
    check_r(mc, r)?;
    Search::new(mc, cfg, Target::Curve(r)).estimate(alpha)
}

/// p* for coordinate `i`: the p at which Pr[i in supp S_C(x)] = 1/2.
pub fn estimate_pstar(
    code: &LinearCode,
    i: usize,
    cfg: BisectionConfig,
) -> Result<ThresholdEstimate> {
    if i >= code.len() {
        return Err(Error::input(format!(
            "coordinate {i} out of range for N = {}",
            code.len()
        )));
    }
    let support = code.support();
    debug_assert_eq!(support.len(), words_for(code.len()));
    if (support[i / 64] >> (i % 64)) & 1 == 0 {
        return Err(Error::input(format!(
            "coordinate {i} is outside supp(C); its bit error is identically 0"
        )));
    }
    let mc = MonteCarlo::new(code);
    Search::new(&mc, cfg, Target::Bit(i)).estimate(0.5)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionWidth {
    pub r: usize,
    pub lo_level: f64,
    pub hi_level: f64,
    /// θ̂(hi) - θ̂(lo); may be slightly negative within the margins.
    pub width: f64,
    pub width_low: f64,
    pub width_high: f64,
    pub lower: ThresholdEstimate,
    pub upper: ThresholdEstimate,
}

/// θ_r(hi) - θ_r(lo), with confidence bounds from the two brackets.
pub fn transition_width(
    code: &LinearCode,
    r: usize,
    lo_level: f64,
    hi_level: f64,
    cfg: BisectionConfig,
) -> Result<TransitionWidth> {
    check_alpha(lo_level)?;
    check_alpha(hi_level)?;
    if lo_level > hi_level {
        return Err(Error::input(format!(
            "lo level {lo_level} exceeds hi level {hi_level}"
        )));
    }
    let mc = MonteCarlo::new(code);
    check_r(&mc, r)?;
    let mut search = Search::new(&mc, cfg, Target::Curve(r));
    let lower = search.estimate(lo_level)?;
    if lo_level == hi_level {
        return Ok(TransitionWidth {
            r,
            lo_level,
            hi_level,
            width: 0.0,
            width_low: 0.0,
            width_high: 0.0,
            upper: lower.clone(),
            lower,
        });
    }
    let upper = search.estimate(hi_level)?;
    Ok(TransitionWidth {
        r,
        lo_level,
        hi_level,
        width: upper.p_hat - lower.p_hat,
        width_low: upper.p_low - lower.p_high,
        width_high: upper.p_high - lower.p_low,
        lower,
        upper,
    })
}

/// θ_r(α) from an exact table, by bisection to within `tolerance`.
pub fn exact_theta(table: &WeightTable, r: usize, alpha: f64, tolerance: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 2.0 * tolerance {
        let mid = 0.5 * (lo + hi);
        if exact_fr(table, r, mid)? >= alpha {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
