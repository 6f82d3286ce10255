//! Minimum distance and minimum subcode support weights d_r(C).

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::reed_muller::RmParams;
use super::{LinearCode, WeiChain};
use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::gf2::{
    gaussian_binomial, or_into, pivot_profiles, popcount, xor_into, BitMatrix, PivotProfile,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Exact,
    LowerBound,
}

/// d_r(C), either computed exactly (with a witness subcode) or bounded below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportWeightResult {
    pub r: BigUint,
    pub value: BigUint,
    pub kind: BoundKind,
    /// r codeword rows spanning a subcode of support `value` (exact only).
    pub witness: Option<BitMatrix>,
}

/// Minimum Hamming weight over all nonzero codewords.
pub fn min_distance_bruteforce(code: &LinearCode, budgets: &Budgets) -> Result<usize> {
    let mut best = usize::MAX;
    let mut first = true;
    code.for_each_codeword(budgets.codeword_bits, |c| {
        if first {
            first = false;
        } else {
            best = best.min(popcount(c));
        }
    })?;
    Ok(best)
}

/// Best (support, assignment) within one pivot profile, by Gray-code walk.
fn profile_minimum(code: &LinearCode, profile: &PivotProfile) -> (usize, u64) {
    let g = code.generator();
    let mut rows: Vec<Vec<u64>> = profile.base_rows().iter().map(|u| code.encode(u)).collect();
    let mut acc = vec![0u64; g.stride()];
    let support = |rows: &[Vec<u64>], acc: &mut [u64]| {
        acc.fill(0);
        for row in rows {
            or_into(acc, row);
        }
        popcount(acc)
    };
    let mut best = (support(&rows, &mut acc), 0u64);
    let mut gray = 0u64;
    for step in 1u64..1 << profile.free.len() {
        let bit = step.trailing_zeros() as usize;
        gray ^= 1 << bit;
        let (row, col) = profile.free[bit];
        xor_into(&mut rows[row], g.row(col));
        let s = support(&rows, &mut acc);
        if s < best.0 {
            best = (s, gray);
        }
    }
    best
}

/// Exact d_r(C) by enumerating every r-dimensional subcode.
pub fn dr_bruteforce(
    code: &LinearCode,
    r: usize,
    budgets: &Budgets,
) -> Result<SupportWeightResult> {
    let k = code.dim();
    if r == 0 || r > k {
        return Err(Error::input(format!("r = {r} outside [1, {k}]")));
    }
    let total = gaussian_binomial(k, r)?;
    if total > budgets.subspaces {
        return Err(Error::limit("d_r enumeration", total, &budgets.subspaces));
    }
    let profiles: Vec<PivotProfile> = pivot_profiles(k, r).collect();
    let minima: Vec<(usize, u64)> = profiles
        .par_iter()
        .map(|p| profile_minimum(code, p))
        .collect();
    // First minimum in profile order keeps the witness independent of scheduling.
    let (idx, &(value, assignment)) = minima
        .iter()
        .enumerate()
        .min_by_key(|(i, (v, _))| (*v, *i))
        .expect("at least one profile");
    let coeffs = profiles[idx].basis(assignment);
    let witness = code.generator().clone();
    let witness = coeffs.mul(&witness)?;
    Ok(SupportWeightResult {
        r: BigUint::from(r),
        value: BigUint::from(value),
        kind: BoundKind::Exact,
        witness: Some(witness),
    })
}

/// Lower bound on d_r(RM(n, d)) from the chain of Wei subcodes.
pub fn rm_dr_lower_bound(n: usize, d: usize, r: &BigUint) -> Result<SupportWeightResult> {
    let chain = WeiChain::new(RmParams::new(n, d)?);
    let (_, value) = chain.lower_bound(r)?;
    Ok(SupportWeightResult {
        r: r.clone(),
        value,
        kind: BoundKind::LowerBound,
        witness: None,
    })
}

/// d_r(C): exact when the subspace count fits the budget, otherwise the
/// Reed–Muller lower bound when the code is known to be RM.
pub fn support_weight(
    code: &LinearCode,
    r: usize,
    budgets: &Budgets,
) -> Result<SupportWeightResult> {
    match dr_bruteforce(code, r, budgets) {
        Err(e) if e.is_resource_limit() => match code.rm_params() {
            Some(RmParams { n, d }) => rm_dr_lower_bound(n, d, &BigUint::from(r)),
            None => Err(e),
        },
        other => other,
    }
}
