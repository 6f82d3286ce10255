//! Seeded Bernoulli erasure patterns.
//!
//! Trial `t` under seed `s` draws from a ChaCha8 generator keyed by `s` on
//! stream `t`, so each trial is reproducible on its own and the result of a
//! run does not depend on how trials are split across threads. Coordinate
//! `j` consumes the `j`-th 32-bit output `u_j` and is erased iff
//! `u_j < round(p * 2^32)`. The same uniforms are reused for every `p`, so a
//! trial's pattern only grows as `p` increases.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ErasurePattern;
use crate::error::{Error, Result};

/// The integer cut-off for erasure probability `p`.
pub fn erasure_threshold(p: f64) -> Result<u64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!(
            "erasure probability {p} outside [0, 1]"
        )));
    }
    Ok((p * 4_294_967_296.0).round() as u64)
}

#[derive(Debug, Clone)]
pub struct PatternSampler {
    len: usize,
    threshold: u64,
    base: ChaCha8Rng,
}

impl PatternSampler {
    pub fn new(len: usize, p: f64, seed: u64) -> Result<Self> {
        Ok(PatternSampler {
            len,
            threshold: erasure_threshold(p)?,
            base: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Writes the sorted erased coordinates of trial `trial` into `out`.
    pub fn fill_erased(&self, trial: u64, out: &mut Vec<usize>) {
        out.clear();
        if self.threshold == 0 {
            return;
        }
        if self.threshold >= 1 << 32 {
            out.extend(0..self.len);
            return;
        }
        let mut rng = self.base.clone();
        rng.set_stream(trial);
        rng.set_word_pos(0);
        for j in 0..self.len {
            if u64::from(rng.next_u32()) < self.threshold {
                out.push(j);
            }
        }
    }

    pub fn pattern(&self, trial: u64) -> ErasurePattern {
        let mut erased = Vec::new();
        self.fill_erased(trial, &mut erased);
        ErasurePattern::from_indices(self.len, erased).expect("indices below len")
    }
}

/// One Bernoulli(p) erasure pattern of length `len`, fixed by `(seed, trial)`.
pub fn sample_pattern(len: usize, p: f64, seed: u64, trial: u64) -> Result<ErasurePattern> {
    Ok(PatternSampler::new(len, p, seed)?.pattern(trial))
}
