//! Linear codes over GF(2), Reed–Muller constructions and support weights.

mod io;
mod reed_muller;
mod weights;

pub use io::{format_code, load_code, parse_code, save_code};
pub use reed_muller::{
    binomial, binomial_prefix_sum, monomials, rm_code, rm_dimension, wei_point, wei_subcode,
    RmParams, WeiChain,
};
pub use weights::{
    dr_bruteforce, min_distance_bruteforce, rm_dr_lower_bound, support_weight, BoundKind,
    SupportWeightResult,
};

use crate::error::{Error, Result};
use crate::gf2::{or_into, popcount, words_for, BitMatrix};

/// A binary linear code given by a full-rank generator matrix (k x N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: BitMatrix,
    origin: Option<RmParams>,
}

impl LinearCode {
    /// Wraps a generator matrix, rejecting empty or rank-deficient ones.
    pub fn new(generator: BitMatrix) -> Result<Self> {
        if generator.cols() == 0 {
            return Err(Error::input("block length must be at least 1"));
        }
        if generator.rows() == 0 {
            return Err(Error::input("code dimension must be at least 1"));
        }
        let rank = generator.rank();
        if rank != generator.rows() {
            return Err(Error::input(format!(
                "generator rows are dependent: rank {rank} < k = {}",
                generator.rows()
            )));
        }
        Ok(LinearCode {
            generator,
            origin: None,
        })
    }

    pub(crate) fn with_origin(mut self, params: RmParams) -> Self {
        self.origin = Some(params);
        self
    }

    /// Block length N.
    pub fn len(&self) -> usize {
        self.generator.cols()
    }

    /// Always false; codes have N >= 1.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Dimension k.
    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    /// Reed–Muller parameters, when this code is known to be RM(n, d).
    pub fn rm_params(&self) -> Option<RmParams> {
        self.origin
    }

    /// Message `u` (packed over k bits) times the generator.
    pub fn encode(&self, u: &[u64]) -> Vec<u64> {
        self.generator.left_mul_vec(u)
    }

    /// supp(C): coordinates where some codeword is nonzero, packed over N bits.
    pub fn support(&self) -> Vec<u64> {
        let mut acc = vec![0u64; words_for(self.len())];
        for row in self.generator.row_iter() {
            or_into(&mut acc, row);
        }
        acc
    }

    pub fn support_size(&self) -> usize {
        popcount(&self.support())
    }

    /// Parity-check matrix H ((N-k) x N) with C = {c : H c^T = 0}.
    pub fn parity_check(&self) -> BitMatrix {
        self.generator.transpose().null_space()
    }

    /// Calls `f` on every codeword (including zero) in Gray-code order.
    pub fn for_each_codeword(&self, max_dim: usize, mut f: impl FnMut(&[u64])) -> Result<()> {
        let k = self.dim();
        if k > max_dim {
            return Err(Error::limit(
                "codeword enumeration",
                format!("2^{k}"),
                format!("2^{max_dim}"),
            ));
        }
        let mut c = vec![0u64; self.generator.stride()];
        f(&c);
        for step in 1u64..1 << k {
            let row = step.trailing_zeros() as usize;
            crate::gf2::xor_into(&mut c, self.generator.row(row));
            f(&c);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_dependent_and_empty_generators() {
        let dep = BitMatrix::from_bit_strings(&["1100", "0110", "1010"]).unwrap();
        let err = LinearCode::new(dep).unwrap_err();
        assert!(err.to_string().contains("rank 2 < k = 3"));
        assert!(LinearCode::new(BitMatrix::zeros(0, 4)).is_err());
        assert!(LinearCode::new(BitMatrix::zeros(1, 0)).is_err());
    }

    #[test]
    fn parity_check_is_orthogonal_and_sized() {
        let code = rm_code(RmParams::new(4, 2).unwrap(), &Default::default()).unwrap();
        let h = code.parity_check();
        assert_eq!(h.rows(), 16 - 11);
        assert!(code.generator().mul(&h.transpose()).unwrap().is_zero());
    }

    #[test]
    fn zero_columns_shrink_the_support() {
        let g = BitMatrix::from_bit_strings(&["1100", "0100"]).unwrap();
        let code = LinearCode::new(g).unwrap();
        assert_eq!(code.support_size(), 2);
    }
}
