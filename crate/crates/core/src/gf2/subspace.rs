//! Canonical enumeration of r-dimensional subspaces of GF(2)^k.
//!
//! Every subspace has a unique reduced row-echelon basis. Such a basis is
//! determined by its pivot columns plus a free choice of the entries that
//! lie to the right of each pivot in non-pivot columns, so walking all pivot
//! profiles and all free assignments visits each subspace exactly once.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;

use super::{words_for, BitMatrix};
use crate::error::{Error, Result};

/// Number of r-dimensional subspaces of GF(2)^k.
pub fn gaussian_binomial(k: usize, r: usize) -> Result<BigUint> {
    if r > k {
        return Err(Error::input(format!(
            "subspace dimension {r} exceeds ambient dimension {k}"
        )));
    }
    let r = r.min(k - r);
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= (&one << (k - i)) - &one;
        den *= (&one << (i + 1)) - &one;
    }
    Ok(num / den)
}

/// One choice of pivot columns, with the positions left free by it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotProfile {
    pub k: usize,
    pub pivots: Vec<usize>,
    /// `(row, column)` entries that may be set freely.
    pub free: Vec<(usize, usize)>,
}

impl PivotProfile {
    fn new(k: usize, pivots: Vec<usize>) -> Self {
        let mut free = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            for col in p + 1..k {
                if pivots.binary_search(&col).is_err() {
                    free.push((row, col));
                }
            }
        }
        PivotProfile { k, pivots, free }
    }

    /// Number of subspaces sharing this profile.
    pub fn count(&self) -> BigUint {
        BigUint::one() << self.free.len()
    }

    /// Basis rows (packed over `k` bits) with every free entry cleared.
    pub fn base_rows(&self) -> Vec<Vec<u64>> {
        let words = words_for(self.k);
        self.pivots
            .iter()
            .map(|&p| {
                let mut row = vec![0u64; words];
                row[p / 64] |= 1 << (p % 64);
                row
            })
            .collect()
    }

    /// The RREF basis whose free entries are given by the low bits of `assignment`.
    pub fn basis(&self, assignment: u64) -> BitMatrix {
        let mut rows = self.base_rows();
        for (bit, &(row, col)) in self.free.iter().enumerate() {
            if assignment >> bit & 1 == 1 {
                rows[row][col / 64] |= 1 << (col % 64);
            }
        }
        BitMatrix::from_packed_rows(self.k, rows.iter().map(|r| r.as_slice()))
    }
}

/// All pivot profiles for r-dimensional subspaces of GF(2)^k, in
/// lexicographic order of pivot sets.
pub fn pivot_profiles(k: usize, r: usize) -> impl Iterator<Item = PivotProfile> {
    (0..k)
        .combinations(r)
        .map(move |pivots| PivotProfile::new(k, pivots))
}

/// Stream of RREF bases, one per r-dimensional subspace of GF(2)^k.
pub struct SubspaceIter {
    profiles: Box<dyn Iterator<Item = PivotProfile> + Send>,
    current: Option<PivotProfile>,
    next_assignment: u64,
}

impl Iterator for SubspaceIter {
    type Item = BitMatrix;

    fn next(&mut self) -> Option<BitMatrix> {
        loop {
            if let Some(profile) = &self.current {
                // Budget checks keep free.len() well below 64.
                if self.next_assignment < 1u64 << profile.free.len() {
                    let basis = profile.basis(self.next_assignment);
                    self.next_assignment += 1;
                    return Some(basis);
                }
            }
            self.current = Some(self.profiles.next()?);
            self.next_assignment = 0;
        }
    }
}

/// Enumerates every r-dimensional subspace of GF(2)^k exactly once.
///
/// Fails with a resource-limit error when the number of subspaces exceeds `budget`.
pub fn enumerate_subspaces(k: usize, r: usize, budget: &BigUint) -> Result<SubspaceIter> {
    let total = gaussian_binomial(k, r)?;
    if &total > budget {
        return Err(Error::limit("subspace enumeration", total, budget));
    }
    Ok(SubspaceIter {
        profiles: Box::new(pivot_profiles(k, r)),
        current: None,
        next_assignment: 0,
    })
}
