//! Bit-packed linear algebra over GF(2).
//!
//! Rows are stored as little-endian runs of `u64` words: bit `j` of a row
//! lives in word `j / 64` at position `j % 64`. Padding bits past `cols` are
//! kept at zero so that word-wise comparisons and popcounts are exact.

mod matrix;
mod subspace;

pub use matrix::BitMatrix;
pub use subspace::{
    enumerate_subspaces, gaussian_binomial, pivot_profiles, PivotProfile, SubspaceIter,
};

/// Number of `u64` words needed to hold `bits` bits.
#[inline]
pub const fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Iterates over the indices of set bits in a packed word slice.
pub fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            }
        })
    })
}

#[inline]
pub fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

#[inline]
pub fn or_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}
