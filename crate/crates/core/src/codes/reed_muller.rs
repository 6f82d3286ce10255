//! Reed–Muller codes as evaluation codes, and Wei's minimal-support subcodes.
//!
//! Coordinate `j` in `[0, 2^n)` is the point whose bit `i` (least significant
//! first) is the value of variable `x_{i+1}`. Rows are monomials, ordered by
//! degree and then lexicographically by variable set.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::LinearCode;
use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RmParams {
    pub n: usize,
    pub d: usize,
}

impl RmParams {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if d > n {
            return Err(Error::input(format!(
                "degree {d} exceeds variable count {n}"
            )));
        }
        Ok(RmParams { n, d })
    }
}

impl std::fmt::Display for RmParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RM({},{})", self.n, self.d)
    }
}

pub fn binomial(m: usize, j: usize) -> BigUint {
    if j > m {
        return BigUint::zero();
    }
    let j = j.min(m - j);
    let mut c = BigUint::one();
    for i in 0..j {
        c *= m - i;
        c /= i + 1;
    }
    c
}

/// Sum of C(m, j) for j = 0..=s.
pub fn binomial_prefix_sum(m: usize, s: usize) -> BigUint {
    let mut term = BigUint::one();
    let mut sum = BigUint::zero();
    for j in 0..=s.min(m) {
        if j > 0 {
            term *= m - j + 1;
            term /= j;
        }
        sum += &term;
    }
    sum
}

/// Dimension of RM(n, d): the number of monomials of degree at most d.
pub fn rm_dimension(n: usize, d: usize) -> Result<BigUint> {
    RmParams::new(n, d)?;
    Ok(binomial_prefix_sum(n, d))
}

/// Variable sets of all monomials of degree <= d in the given variables,
/// ordered by degree then lexicographically.
pub fn monomials(vars: &[usize], d: usize) -> Vec<Vec<usize>> {
    (0..=d.min(vars.len()))
        .flat_map(|deg| vars.iter().copied().combinations(deg))
        .collect()
}

fn check_size(rows: &BigUint, n: usize, budgets: &Budgets) -> Result<()> {
    if n >= 63 {
        return Err(Error::limit(
            "Reed–Muller generator",
            format!("2^{n} columns"),
            budgets.matrix_bits,
        ));
    }
    let bits = rows * (1u64 << n);
    if bits > BigUint::from(budgets.matrix_bits) {
        return Err(Error::limit(
            "Reed–Muller generator",
            format!("{bits} bits"),
            budgets.matrix_bits,
        ));
    }
    Ok(())
}

fn evaluation_matrix(n: usize, monos: &[Vec<usize>]) -> BitMatrix {
    let len = 1usize << n;
    let mut g = BitMatrix::zeros(monos.len(), len);
    for (row, vars) in monos.iter().enumerate() {
        let mask: usize = vars.iter().map(|&v| 1usize << v).sum();
        let words = g.row_mut(row);
        for point in 0..len {
            if point & mask == mask {
                words[point / 64] |= 1 << (point % 64);
            }
        }
    }
    g
}

/// Generator matrix of RM(n, d).
pub fn rm_code(params: RmParams, budgets: &Budgets) -> Result<LinearCode> {
    let RmParams { n, d } = params;
    check_size(&binomial_prefix_sum(n, d), n, budgets)?;
    let vars: Vec<usize> = (0..n).collect();
    let g = evaluation_matrix(n, &monomials(&vars, d));
    Ok(LinearCode::new(g)?.with_origin(params))
}

/// The Wei subcode S_t of RM(n, d): evaluations of x_1 ... x_t times every
/// monomial of degree <= d - t in x_{t+1}, ..., x_n.
pub fn wei_subcode(n: usize, d: usize, t: usize, budgets: &Budgets) -> Result<LinearCode> {
    RmParams::new(n, d)?;
    if t > d {
        return Err(Error::input(format!("t = {t} exceeds degree {d}")));
    }
    check_size(&binomial_prefix_sum(n - t, d - t), n, budgets)?;
    let tail: Vec<usize> = (t..n).collect();
    let monos: Vec<Vec<usize>> = monomials(&tail, d - t)
        .into_iter()
        .map(|m| (0..t).chain(m).collect())
        .collect();
    LinearCode::new(evaluation_matrix(n, &monos))
}

/// Dimension and support size of S_t: (C(n-t, <= d-t), 2^(n-t)).
pub fn wei_point(n: usize, d: usize, t: usize) -> Result<(BigUint, BigUint)> {
    RmParams::new(n, d)?;
    if t > d {
        return Err(Error::input(format!("t = {t} exceeds degree {d}")));
    }
    Ok((binomial_prefix_sum(n - t, d - t), BigUint::one() << (n - t)))
}

/// Dimensions of all Wei subcodes S_0, ..., S_d of RM(n, d).
///
/// `dims` is strictly decreasing in t, from dim RM(n, d) down to 1.
#[derive(Debug, Clone)]
pub struct WeiChain {
    pub params: RmParams,
    pub dims: Vec<BigUint>,
}

impl WeiChain {
    pub fn new(params: RmParams) -> Self {
        let RmParams { n, d } = params;
        let dims = (0..=d).map(|t| binomial_prefix_sum(n - t, d - t)).collect();
        WeiChain { params, dims }
    }

    pub fn code_dim(&self) -> &BigUint {
        &self.dims[0]
    }

    /// Smallest t with dim S_t <= r, or None when r = 0.
    pub fn t_star(&self, r: &BigUint) -> Option<usize> {
        if r.is_zero() {
            return None;
        }
        // dims is decreasing; find the first index where dims[t] <= r.
        Some(self.dims.partition_point(|dim| dim > r))
    }

    /// 2^(n - t*): a lower bound on d_r from monotonicity of d_r and Wei's theorem.
    pub fn lower_bound(&self, r: &BigUint) -> Result<(usize, BigUint)> {
        if r.is_zero() || r > self.code_dim() {
            return Err(Error::input(format!(
                "r = {r} outside [1, {}] for {}",
                self.code_dim(),
                self.params
            )));
        }
        let t = self.t_star(r).expect("r >= 1");
        Ok((t, BigUint::one() << (self.params.n - t)))
    }
}
