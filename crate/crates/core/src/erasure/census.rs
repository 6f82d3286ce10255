//! Exhaustive scan of all 2^N erasure patterns.
//!
//! Pattern `x` is identified with the integer whose bit `i` is `x_i`. The
//! scan records dim S_C(x) and |supp S_C(x)| for every pattern, which is
//! enough to evaluate g_r, h_{g_r} and f_r exactly.

use rayon::prelude::*;

use super::ErasureSolver;
use crate::budget::Budgets;
use crate::codes::LinearCode;
use crate::error::{Error, Result};

const CHUNK: usize = 1 << 12;
const HARD_LIMIT: usize = 30;

#[derive(Debug, Clone)]
pub struct PatternCensus {
    len: usize,
    code_dim: usize,
    dims: Vec<u8>,
    support_sizes: Vec<u8>,
}

impl PatternCensus {
    pub fn new(code: &LinearCode, budgets: &Budgets) -> Result<Self> {
        let n = code.len();
        let limit = budgets.exhaustive_bits.min(HARD_LIMIT);
        if n > limit {
            return Err(Error::limit(
                "exhaustive pattern scan",
                format!("N = {n}"),
                format!("N <= {limit}"),
            ));
        }
        let solver = ErasureSolver::new(code);
        let total = 1usize << n;
        let mut dims = vec![0u8; total];
        let mut support_sizes = vec![0u8; total];
        dims.par_chunks_mut(CHUNK)
            .zip(support_sizes.par_chunks_mut(CHUNK))
            .enumerate()
            .for_each(|(chunk, (dim_out, supp_out))| {
                let mut ws = solver.workspace();
                let mut erased = Vec::with_capacity(n);
                let mut support = Vec::with_capacity(n);
                for (offset, (d, s)) in dim_out.iter_mut().zip(supp_out.iter_mut()).enumerate() {
                    let mask = (chunk * CHUNK + offset) as u64;
                    erased.clear();
                    erased.extend((0..n).filter(|i| mask >> i & 1 == 1));
                    *d = solver.support(&erased, &mut ws, &mut support) as u8;
                    *s = support.len() as u8;
                }
            });
        Ok(PatternCensus {
            len: n,
            code_dim: code.dim(),
            dims,
            support_sizes,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn code_dim(&self) -> usize {
        self.code_dim
    }

    pub fn dim(&self, mask: u64) -> usize {
        self.dims[mask as usize] as usize
    }

    pub fn support_size(&self, mask: u64) -> usize {
        self.support_sizes[mask as usize] as usize
    }

    /// h_{g_r}(x) from its definition, flipping each coordinate in turn.
    pub fn h_literal(&self, mask: u64, r: usize) -> usize {
        if self.dim(mask) < r {
            return 0;
        }
        (0..self.len)
            .filter(|&i| self.dim(mask ^ (1 << i)) < r)
            .count()
    }

    /// h_{g_r}(x) as |supp S_C(x)| when dim S_C(x) = r.
    pub fn h_from_support(&self, mask: u64, r: usize) -> usize {
        if self.dim(mask) == r {
            self.support_size(mask)
        } else {
            0
        }
    }

    fn masks(&self) -> impl ParallelIterator<Item = u64> {
        (0..1u64 << self.len).into_par_iter()
    }

    /// Per weight w: number of weight-w patterns with dim S_C(x) >= r.
    pub fn dim_at_least_counts(&self, r: usize) -> Vec<u64> {
        self.fold_by_weight(|mask| u64::from(self.dim(mask) >= r))
    }

    /// Per weight w: sum of h_{g_r} (literal definition) over weight-w patterns.
    pub fn h_sums(&self, r: usize) -> Vec<u64> {
        self.fold_by_weight(|mask| self.h_literal(mask, r) as u64)
    }

    /// Per weight w: number of weight-w patterns with h_{g_r} != 0.
    pub fn h_nonzero_counts(&self, r: usize) -> Vec<u64> {
        self.fold_by_weight(|mask| u64::from(self.h_literal(mask, r) != 0))
    }

    /// Per weight w: sum over weight-w patterns of [i in supp S_C(x)].
    pub fn bit_error_counts(&self, i: usize) -> Vec<u64> {
        // dim drops when i is unerased exactly when i is in the support
        self.fold_by_weight(|mask| {
            u64::from(mask >> i & 1 == 1 && self.dim(mask ^ (1 << i)) < self.dim(mask))
        })
    }

    fn fold_by_weight(&self, f: impl Fn(u64) -> u64 + Sync) -> Vec<u64> {
        let n = self.len;
        self.masks()
            .fold(
                || vec![0u64; n + 1],
                |mut acc, mask| {
                    acc[mask.count_ones() as usize] += f(mask);
                    acc
                },
            )
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    }

    /// nu_{g_r}: smallest nonzero h_{g_r}.
    pub fn nu(&self, r: usize) -> Result<usize> {
        if r == 0 {
            return Err(Error::input("r must be at least 1"));
        }
        self.masks()
            .map(|mask| self.h_literal(mask, r))
            .filter(|&h| h != 0)
            .min()
            .ok_or(Error::NoNonzeroValue { r })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{rm_code, RmParams};
    use crate::erasure::{covered_subcode, ErasurePattern};

    fn rm(n: usize, d: usize) -> LinearCode {
        rm_code(RmParams::new(n, d).unwrap(), &Budgets::default()).unwrap()
    }

    #[test]
    fn census_matches_generator_route() {
        let code = rm(3, 1);
        let census = PatternCensus::new(&code, &Budgets::default()).unwrap();
        for mask in 0..256u64 {
            let s = covered_subcode(&code, &ErasurePattern::from_mask(8, mask)).unwrap();
            assert_eq!(census.dim(mask), s.dim);
            assert_eq!(census.support_size(mask), s.support.len());
        }
    }

    #[test]
    fn both_h_forms_agree_on_small_codes() {
        for (n, d) in [(3, 0), (3, 1), (3, 2), (4, 1), (4, 2)] {
            let census = PatternCensus::new(&rm(n, d), &Budgets::default()).unwrap();
            for r in 1..=census.code_dim() + 1 {
                for mask in 0..1u64 << census.len() {
                    assert_eq!(
                        census.h_literal(mask, r),
                        census.h_from_support(mask, r),
                        "RM({n},{d}) r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn rm31_weight_four_count_is_fourteen() {
        let census = PatternCensus::new(&rm(3, 1), &Budgets::default()).unwrap();
        assert_eq!(census.dim_at_least_counts(1)[4], 14);
        assert_eq!(
            census.dim_at_least_counts(0),
            vec![1, 8, 28, 56, 70, 56, 28, 8, 1]
        );
    }
}
