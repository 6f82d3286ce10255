use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::erasure::{ErasureSolver, PatternSampler, Workspace};
use crate::error::{Error, Result};

const TRIAL_CHUNK: u64 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
}

impl McConfig {
    pub fn new(trials: u64, seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::input("trials must be at least 1"));
        }
        Ok(McConfig { trials, seed })
    }
}

/// A Bernoulli-mean estimate. `r` is the curve index for f_r estimates and
/// the coordinate for bit-error estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveEstimate {
    pub p: f64,
    pub r: usize,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl CurveEstimate {
    pub fn from_counts(p: f64, r: usize, successes: u64, cfg: McConfig) -> Self {
        let estimate = successes as f64 / cfg.trials as f64;
        let stderr = (estimate * (1.0 - estimate) / cfg.trials as f64).sqrt();
        CurveEstimate {
            p,
            r,
            trials: cfg.trials,
            successes,
            estimate,
            stderr,
            seed: cfg.seed,
        }
    }

    /// An exact curve value, written with zero trials and zero stderr.
    pub fn exact(p: f64, r: usize, value: f64) -> Self {
        CurveEstimate {
            p,
            r,
            trials: 0,
            successes: 0,
            estimate: value,
            stderr: 0.0,
            seed: 0,
        }
    }

    /// estimate - k * stderr, clipped to [0, 1].
    pub fn lower(&self, k: f64) -> f64 {
        (self.estimate - k * self.stderr).clamp(0.0, 1.0)
    }

    /// estimate + k * stderr, clipped to [0, 1].
    pub fn upper(&self, k: f64) -> f64 {
        (self.estimate + k * self.stderr).clamp(0.0, 1.0)
    }
}

/// Monte Carlo estimator bound to one code. Trials run in fixed-size chunks
/// across the rayon pool; counts are summed as integers, so the result is the
/// same for any number of threads.
#[derive(Debug, Clone)]
pub struct MonteCarlo {
    solver: ErasureSolver,
}

impl MonteCarlo {
    pub fn new(code: &LinearCode) -> Self {
        MonteCarlo {
            solver: ErasureSolver::new(code),
        }
    }

    pub fn len(&self) -> usize {
        self.solver.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solver.is_empty()
    }

    pub fn code_dim(&self) -> usize {
        self.solver.code_dim()
    }

    fn count<F>(&self, p: f64, cfg: McConfig, event: F) -> Result<u64>
    where
        F: Fn(&ErasureSolver, &[usize], &mut Workspace) -> bool + Sync,
    {
        let sampler = PatternSampler::new(self.solver.len(), p, cfg.seed)?;
        let chunks = cfg.trials.div_ceil(TRIAL_CHUNK);
        Ok((0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut ws = self.solver.workspace();
                let mut erased = Vec::with_capacity(self.solver.len());
                let end = ((c + 1) * TRIAL_CHUNK).min(cfg.trials);
                let mut hits = 0u64;
                for trial in c * TRIAL_CHUNK..end {
                    sampler.fill_erased(trial, &mut erased);
                    if event(&self.solver, &erased, &mut ws) {
                        hits += 1;
                    }
                }
                hits
            })
            .sum())
    }

    /// Estimate of f_r(p) = Pr[dim S_C(x) >= r].
    pub fn fr(&self, p: f64, r: usize, cfg: McConfig) -> Result<CurveEstimate> {
        let hits = self.count(p, cfg, |s, e, ws| s.dim_at_least(e, r, ws))?;
        Ok(CurveEstimate::from_counts(p, r, hits, cfg))
    }

    /// Estimate of Pr[i in supp S_C(x)].
    pub fn bit_error(&self, p: f64, i: usize, cfg: McConfig) -> Result<CurveEstimate> {
        self.check_coordinate(i)?;
        let hits = self.count(p, cfg, |s, e, ws| s.bit_in_support(e, i, ws))?;
        Ok(CurveEstimate::from_counts(p, i, hits, cfg))
    }

    /// Bit-error estimates for several coordinates from one shared run.
    pub fn bit_errors(
        &self,
        p: f64,
        coords: &[usize],
        cfg: McConfig,
    ) -> Result<Vec<CurveEstimate>> {
        for &i in coords {
            self.check_coordinate(i)?;
        }
        let sampler = PatternSampler::new(self.solver.len(), p, cfg.seed)?;
        let chunks = cfg.trials.div_ceil(TRIAL_CHUNK);
        let n = self.solver.len();
        let totals = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut ws = self.solver.workspace();
                let mut erased = Vec::with_capacity(n);
                let mut support = Vec::with_capacity(n);
                let mut in_support = vec![false; n];
                let mut hits = vec![0u64; coords.len()];
                let end = ((c + 1) * TRIAL_CHUNK).min(cfg.trials);
                for trial in c * TRIAL_CHUNK..end {
                    sampler.fill_erased(trial, &mut erased);
                    if self.solver.support(&erased, &mut ws, &mut support) == 0 {
                        continue;
                    }
                    for &j in &support {
                        in_support[j] = true;
                    }
                    for (h, &i) in hits.iter_mut().zip(coords) {
                        *h += u64::from(in_support[i]);
                    }
                    for &j in &support {
                        in_support[j] = false;
                    }
                }
                hits
            })
            .reduce(
                || vec![0u64; coords.len()],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        Ok(coords
            .iter()
            .zip(totals)
            .map(|(&i, h)| CurveEstimate::from_counts(p, i, h, cfg))
            .collect())
    }

    fn check_coordinate(&self, i: usize) -> Result<()> {
        if i >= self.solver.len() {
            return Err(Error::input(format!(
                "coordinate {i} out of range for N = {}",
                self.solver.len()
            )));
        }
        Ok(())
    }
}

pub fn mc_fr(code: &LinearCode, p: f64, r: usize, trials: u64, seed: u64) -> Result<CurveEstimate> {
    MonteCarlo::new(code).fr(p, r, McConfig::new(trials, seed)?)
}

pub fn mc_bit_error(
    code: &LinearCode,
    p: f64,
    i: usize,
    trials: u64,
    seed: u64,
) -> Result<CurveEstimate> {
    MonteCarlo::new(code).bit_error(p, i, McConfig::new(trials, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{exact_fr, exact_weight_table};
    use crate::budget::Budgets;
    use crate::codes::{rm_code, RmParams};
    use crate::erasure::PatternCensus;
    use crate::gf2::BitMatrix;

    fn rm(n: usize, d: usize) -> LinearCode {
        rm_code(RmParams::new(n, d).unwrap(), &Budgets::default()).unwrap()
    }

    #[test]
    fn endpoints_are_exact() {
        let c = rm(4, 2);
        assert_eq!(mc_fr(&c, 0.0, 1, 1000, 3).unwrap().estimate, 0.0);
        assert_eq!(mc_fr(&c, 1.0, c.dim(), 1000, 3).unwrap().estimate, 1.0);
        assert_eq!(mc_bit_error(&c, 0.0, 5, 1000, 3).unwrap().estimate, 0.0);
        assert!(mc_fr(&c, 0.5, 1, 0, 3).is_err());
        assert!(mc_bit_error(&c, 0.5, 16, 10, 3).is_err());
    }

    #[test]
    fn rm42_block_error_matches_table() {
        let c = rm(4, 2);
        let t = exact_weight_table(&c, 1, &Budgets::default()).unwrap();
        let exact = exact_fr(&t, 1, 0.5).unwrap();
        let est = mc_fr(&c, 0.5, 1, 100_000, 11).unwrap();
        assert!(
            (est.estimate - exact).abs() <= 4.0 * est.stderr,
            "{est:?} vs {exact}"
        );
    }

    #[test]
    fn rm31_bit_error_matches_census() {
        let c = rm(3, 1);
        let census = PatternCensus::new(&c, &Budgets::default()).unwrap();
        // at p = 1/2 every pattern has probability 2^-8
        let exact = census.bit_error_counts(0).iter().sum::<u64>() as f64 / 256.0;
        let est = mc_bit_error(&c, 0.5, 0, 50_000, 5).unwrap();
        assert!(
            (est.estimate - exact).abs() <= 4.0 * est.stderr,
            "{est:?} vs {exact}"
        );
    }

    #[test]
    fn full_space_bit_error_is_p() {
        let c = LinearCode::new(BitMatrix::identity(6)).unwrap();
        let est = mc_bit_error(&c, 0.3, 2, 40_000, 9).unwrap();
        assert!((est.estimate - 0.3).abs() <= 4.0 * est.stderr);
    }

    #[test]
    fn shared_run_agrees_with_single_coordinate() {
        let c = rm(5, 2);
        let mc = MonteCarlo::new(&c);
        let cfg = McConfig::new(3000, 17).unwrap();
        let many = mc.bit_errors(0.4, &[0, 7, 31], cfg).unwrap();
        for e in many {
            assert_eq!(e, mc.bit_error(0.4, e.r, cfg).unwrap());
        }
    }

    #[test]
    fn deterministic_and_thread_independent() {
        let c = rm(5, 2);
        let cfg = McConfig::new(5000, 1).unwrap();
        let a = MonteCarlo::new(&c).fr(0.35, 2, cfg).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(3)
            .build()
            .unwrap();
        let b = pool.install(|| MonteCarlo::new(&c).fr(0.35, 2, cfg).unwrap());
        assert_eq!(a, b);
    }
}
