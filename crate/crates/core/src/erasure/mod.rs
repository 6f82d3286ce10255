//! Erasure patterns and the subcode they cover.
//!
//! A pattern `x` marks erased coordinates with 1. It covers a codeword `c`
//! when `c_i <= x_i` everywhere, and S_C(x) is the subcode of all covered
//! codewords. The received word determines `c_i` exactly when `i` lies
//! outside supp(S_C(x)).

mod census;
mod sampling;
mod solver;

pub use census::PatternCensus;
pub use sampling::{erasure_threshold, sample_pattern, PatternSampler};
pub use solver::{ErasureSolver, Workspace};

use crate::budget::Budgets;
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{iter_ones, or_into, popcount, words_for, BitMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ErasurePattern {
    bits: Vec<u64>,
    len: usize,
    weight: usize,
}

impl ErasurePattern {
    pub fn none(len: usize) -> Self {
        ErasurePattern {
            bits: vec![0; words_for(len)],
            len,
            weight: 0,
        }
    }

    pub fn all(len: usize) -> Self {
        Self::from_indices(len, 0..len).expect("indices in range")
    }

    pub fn from_indices(len: usize, erased: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut p = Self::none(len);
        for i in erased {
            if i >= len {
                return Err(Error::input(format!(
                    "erased index {i} out of range for length {len}"
                )));
            }
            p.bits[i / 64] |= 1 << (i % 64);
        }
        p.weight = popcount(&p.bits);
        Ok(p)
    }

    /// Pattern from the low `len` bits of `mask` (len <= 64).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "mask patterns hold at most 64 coordinates");
        let mask = if len == 64 {
            mask
        } else {
            mask & ((1u64 << len) - 1)
        };
        let bits = if len == 0 { vec![] } else { vec![mask] };
        ErasurePattern {
            bits,
            len,
            weight: mask.count_ones() as usize,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    pub fn is_erased(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn erased(&self) -> Vec<usize> {
        iter_ones(&self.bits).collect()
    }

    pub fn unerased(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| !self.is_erased(i)).collect()
    }

    /// Copy with coordinate `i` flipped.
    pub fn flipped(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.bits[i / 64] ^= 1 << (i % 64);
        p.weight = popcount(&p.bits);
        p
    }

    /// Cover relation: every nonzero coordinate of `c` is erased.
    pub fn covers(&self, codeword: &[u64]) -> bool {
        codeword.iter().zip(&self.bits).all(|(c, x)| c & !x == 0)
    }
}

/// S_C(x) with a basis of codewords and its support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveredSubcode {
    pub dim: usize,
    /// `dim x N` matrix of covered codewords spanning S_C(x).
    pub basis: BitMatrix,
    /// supp(S_C(x)) in increasing order.
    pub support: Vec<usize>,
}

fn check_len(code: &LinearCode, x: &ErasurePattern) -> Result<()> {
    if x.len() != code.len() {
        return Err(Error::input(format!(
            "pattern length {} does not match block length {}",
            x.len(),
            code.len()
        )));
    }
    Ok(())
}

/// Computes S_C(x) from the generator: messages `u` with `u G` zero on the
/// unerased columns form the left null space of G restricted to them.
pub fn covered_subcode(code: &LinearCode, x: &ErasurePattern) -> Result<CoveredSubcode> {
    check_len(code, x)?;
    let g = code.generator();
    let kept = g.restrict_columns(&x.unerased())?;
    let messages = kept.null_space();
    let basis = messages.mul(g)?;
    let mut acc = vec![0u64; g.stride()];
    for row in basis.row_iter() {
        or_into(&mut acc, row);
    }
    Ok(CoveredSubcode {
        dim: basis.rows(),
        basis,
        support: iter_ones(&acc).collect(),
    })
}

/// True iff coordinate `i` of the sent codeword is determined by the unerased symbols.
pub fn bit_recoverable(code: &LinearCode, x: &ErasurePattern, i: usize) -> Result<bool> {
    if i >= code.len() {
        return Err(Error::input(format!(
            "coordinate {i} out of range for N = {}",
            code.len()
        )));
    }
    Ok(covered_subcode(code, x)?.support.binary_search(&i).is_err())
}

/// h_{g_r}(x) through the identity h = |supp S_C(x)| when dim S_C(x) = r, else 0.
pub fn h_gr(code: &LinearCode, x: &ErasurePattern, r: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::input("r must be at least 1"));
    }
    let s = covered_subcode(code, x)?;
    Ok(if s.dim == r { s.support.len() } else { 0 })
}

/// h_{g_r}(x) straight from its definition: when g_r(x) = 1, the number of
/// coordinates whose flip makes g_r vanish.
pub fn h_gr_literal(code: &LinearCode, x: &ErasurePattern, r: usize) -> Result<usize> {
    let g = |p: &ErasurePattern| -> Result<bool> { Ok(covered_subcode(code, p)?.dim >= r) };
    if !g(x)? {
        return Ok(0);
    }
    let mut count = 0;
    for i in 0..x.len() {
        if !g(&x.flipped(i))? {
            count += 1;
        }
    }
    Ok(count)
}

/// nu_{g_r}: the minimum nonzero value of h_{g_r} over all 2^N patterns.
pub fn nu_gr(code: &LinearCode, r: usize, budgets: &Budgets) -> Result<usize> {
    PatternCensus::new(code, budgets)?.nu(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{rm_code, RmParams};
    use proptest::prelude::*;

    fn rm(n: usize, d: usize) -> LinearCode {
        rm_code(RmParams::new(n, d).unwrap(), &Budgets::default()).unwrap()
    }

    /// S_C(x) by filtering all 2^k codewords through the cover relation.
    fn brute_covered(code: &LinearCode, x: &ErasurePattern) -> (usize, Vec<usize>) {
        let mut count = 0usize;
        let mut acc = vec![0u64; words_for(code.len())];
        code.for_each_codeword(20, |c| {
            if x.covers(c) {
                count += 1;
                or_into(&mut acc, c);
            }
        })
        .unwrap();
        (count.trailing_zeros() as usize, iter_ones(&acc).collect())
    }

    #[test]
    fn covered_subcode_extremes() {
        let c = rm(3, 1);
        let all = covered_subcode(&c, &ErasurePattern::all(8)).unwrap();
        assert_eq!(all.dim, 4);
        assert_eq!(all.support, (0..8).collect::<Vec<_>>());
        let none = covered_subcode(&c, &ErasurePattern::none(8)).unwrap();
        assert_eq!((none.dim, none.support.len()), (0, 0));
        assert!(covered_subcode(&c, &ErasurePattern::none(7)).is_err());
    }

    #[test]
    fn rm31_half_cube_pattern() {
        let c = rm(3, 1);
        // points with x1 = 1 are the odd indices
        let x = ErasurePattern::from_indices(8, [1, 3, 5, 7]).unwrap();
        let s = covered_subcode(&c, &x).unwrap();
        assert_eq!(brute_covered(&c, &x), (1, vec![1, 3, 5, 7]));
        assert_eq!((s.dim, s.support.clone()), (1, vec![1, 3, 5, 7]));
        for i in 0..8 {
            assert_eq!(bit_recoverable(&c, &x, i).unwrap(), i % 2 == 0);
        }
        assert!(bit_recoverable(&c, &x, 8).is_err());
        assert!(s.basis.row_iter().all(|row| x.covers(row)));
    }

    #[test]
    fn recoverability_extremes() {
        let c = rm(3, 1);
        for i in 0..8 {
            assert!(bit_recoverable(&c, &ErasurePattern::none(8), i).unwrap());
        }
        let rep = rm(3, 0);
        for i in 0..8 {
            assert!(!bit_recoverable(&rep, &ErasurePattern::all(8), i).unwrap());
        }
    }

    #[test]
    fn h_examples() {
        let rep = rm(3, 0);
        assert_eq!(h_gr(&rep, &ErasurePattern::all(8), 1).unwrap(), 8);
        assert_eq!(h_gr_literal(&rep, &ErasurePattern::all(8), 1).unwrap(), 8);
        let c = rm(3, 1);
        // dim 4 > r = 1: no single flip can bring the dimension below 1
        assert_eq!(h_gr(&c, &ErasurePattern::all(8), 1).unwrap(), 0);
        assert_eq!(h_gr_literal(&c, &ErasurePattern::all(8), 1).unwrap(), 0);
        // dim 0 < r
        assert_eq!(h_gr(&c, &ErasurePattern::none(8), 1).unwrap(), 0);
        assert!(h_gr(&c, &ErasurePattern::none(8), 0).is_err());
    }

    #[test]
    fn h_identity_matches_flip_definition_exhaustively() {
        for (n, d) in [(3, 0), (3, 1), (3, 2), (2, 1)] {
            let c = rm(n, d);
            for mask in 0u64..1 << c.len() {
                let x = ErasurePattern::from_mask(c.len(), mask);
                for r in 1..=c.dim() + 1 {
                    assert_eq!(h_gr(&c, &x, r).unwrap(), h_gr_literal(&c, &x, r).unwrap());
                }
            }
        }
    }

    #[test]
    fn nu_examples() {
        let b = Budgets::default();
        assert_eq!(nu_gr(&rm(3, 0), 1, &b).unwrap(), 8);
        assert!(nu_gr(&rm(3, 2), 1, &b).unwrap() >= 2);
        assert_eq!(nu_gr(&rm(1, 1), 1, &b).unwrap(), 1);
        assert!(matches!(
            nu_gr(&rm(3, 1), 5, &b),
            Err(Error::NoNonzeroValue { r: 5 })
        ));
        let tiny = Budgets {
            exhaustive_bits: 4,
            ..b
        };
        assert!(nu_gr(&rm(3, 1), 1, &tiny).unwrap_err().is_resource_limit());
    }

    fn arb_code() -> impl Strategy<Value = LinearCode> {
        (1usize..7, 1usize..14)
            .prop_flat_map(|(k, n)| {
                (
                    Just(k.min(n)),
                    Just(n),
                    proptest::collection::vec(any::<bool>(), k * n),
                )
            })
            .prop_filter_map("full rank", |(k, n, bits)| {
                LinearCode::new(BitMatrix::from_fn(k, n, |i, j| bits[i * n + j])).ok()
            })
    }

    proptest! {
        #[test]
        fn rank_formula_matches_codeword_filtering(code in arb_code(), mask in any::<u64>()) {
            let x = ErasurePattern::from_mask(code.len(), mask);
            let s = covered_subcode(&code, &x).unwrap();
            let unerased_rank = code.generator().restrict_columns(&x.unerased()).unwrap().rank();
            prop_assert_eq!(s.dim, code.dim() - unerased_rank);
            prop_assert_eq!((s.dim, s.support.clone()), brute_covered(&code, &x));
            prop_assert!(s.support.iter().all(|&i| x.is_erased(i)));
        }

        #[test]
        fn dimension_is_monotone_and_drops_by_at_most_one(code in arb_code(), mask in any::<u64>(), extra in any::<u64>()) {
            let n = code.len();
            let x = ErasurePattern::from_mask(n, mask);
            let y = ErasurePattern::from_mask(n, mask | extra);
            let sx = covered_subcode(&code, &x).unwrap();
            prop_assert!(sx.dim <= covered_subcode(&code, &y).unwrap().dim);
            for i in x.erased() {
                let drop = sx.dim - covered_subcode(&code, &x.flipped(i)).unwrap().dim;
                prop_assert!(drop <= 1);
                prop_assert_eq!(drop == 1, sx.support.contains(&i));
            }
        }
    }
}
