use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::budget::Budgets;
use crate::codes::{binomial, LinearCode};
use crate::erasure::PatternCensus;
use crate::error::{Error, Result};
use crate::exact::bernstein_sum;

/// `counts[r][w]` = number of weight-w patterns with dim S_C(x) >= r, for
/// 0 <= r <= rmax. Rows with r > dim C are identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    pub len: usize,
    pub rmax: usize,
    pub counts: Vec<Vec<BigUint>>,
}

impl WeightTable {
    pub fn from_census(census: &PatternCensus, rmax: usize) -> Self {
        let counts = (0..=rmax)
            .map(|r| {
                census
                    .dim_at_least_counts(r)
                    .into_iter()
                    .map(BigUint::from)
                    .collect()
            })
            .collect();
        WeightTable {
            len: census.len(),
            rmax,
            counts,
        }
    }

    pub fn row(&self, r: usize) -> Result<&[BigUint]> {
        self.counts
            .get(r)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::input(format!("r = {r} exceeds table rmax = {}", self.rmax)))
    }

    fn signed_row(&self, r: usize) -> Result<Vec<BigInt>> {
        Ok(self
            .row(r)?
            .iter()
            .map(|c| BigInt::from(c.clone()))
            .collect())
    }

    /// `{N, rmax, A}` with counts as decimal strings.
    pub fn to_json(&self) -> Value {
        let a: Vec<Vec<String>> = self
            .counts
            .iter()
            .map(|row| row.iter().map(|c| c.to_string()).collect())
            .collect();
        json!({ "N": self.len, "rmax": self.rmax, "A": a })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::input(format!("weight table JSON: {what}"));
        let len = value["N"].as_u64().ok_or_else(|| bad("missing N"))? as usize;
        let rmax = value["rmax"].as_u64().ok_or_else(|| bad("missing rmax"))? as usize;
        let rows = value["A"].as_array().ok_or_else(|| bad("missing A"))?;
        if rows.len() != rmax + 1 {
            return Err(bad("A must have rmax + 1 rows"));
        }
        let mut counts = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("rows must be arrays"))?;
            if row.len() != len + 1 {
                return Err(bad("rows must have N + 1 entries"));
            }
            let parsed: Option<Vec<BigUint>> =
                row.iter().map(|c| c.as_str()?.parse().ok()).collect();
            counts.push(parsed.ok_or_else(|| bad("counts must be decimal strings"))?);
        }
        Ok(WeightTable { len, rmax, counts })
    }
}

/// Exact weight table by scanning all 2^N erasure patterns.
pub fn exact_weight_table(
    code: &LinearCode,
    rmax: usize,
    budgets: &Budgets,
) -> Result<WeightTable> {
    Ok(WeightTable::from_census(
        &PatternCensus::new(code, budgets)?,
        rmax,
    ))
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("p = {p} outside [0, 1]")));
    }
    Ok(())
}

/// f_r(p) in floating point.
pub fn exact_fr(table: &WeightTable, r: usize, p: f64) -> Result<f64> {
    check_p(p)?;
    let row = table.row(r)?;
    let n = table.len as i32;
    let q = 1.0 - p;
    Ok(row
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(w, c)| c.to_f64().unwrap_or(f64::INFINITY) * p.powi(w as i32) * q.powi(n - w as i32))
        .sum())
}

/// f_r(p) as an exact rational.
pub fn exact_fr_rational(table: &WeightTable, r: usize, p: &BigRational) -> Result<BigRational> {
    Ok(bernstein_sum(&table.signed_row(r)?, p))
}

/// Analytic derivative d/dp f_r(p), exact.
pub fn fr_derivative_rational(
    table: &WeightTable,
    r: usize,
    p: &BigRational,
) -> Result<BigRational> {
    let row = table.signed_row(r)?;
    let n = table.len;
    let q = BigRational::one() - p;
    let mut total = BigRational::zero();
    for (w, c) in row.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = BigRational::from_integer(c.clone());
        if w > 0 {
            let t = num_traits::pow(p.clone(), w - 1) * num_traits::pow(q.clone(), n - w);
            total += &c * BigRational::from_integer(BigInt::from(w)) * t;
        }
        if w < n {
            let t = num_traits::pow(p.clone(), w) * num_traits::pow(q.clone(), n - w - 1);
            total -= &c * BigRational::from_integer(BigInt::from(n - w)) * t;
        }
    }
    Ok(total)
}

/// ∫_0^1 (f_r - f_{r+1}) dp, using ∫ p^w (1-p)^(N-w) dp = 1 / ((N+1) C(N, w)).
pub fn exact_integral_gap(table: &WeightTable, r: usize) -> Result<BigRational> {
    let upper = table.row(r)?;
    let lower = table.row(r + 1)?;
    let n = table.len;
    let mut total = BigRational::zero();
    for w in 0..=n {
        let diff = BigInt::from(upper[w].clone()) - BigInt::from(lower[w].clone());
        if diff.is_zero() {
            continue;
        }
        let den = BigInt::from(binomial(n, w)) * BigInt::from(n + 1);
        total += BigRational::new(diff, den);
    }
    Ok(total)
}

/// Per-weight sums of h_{g_r} and of [h_{g_r} != 0], from an exhaustive census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HTable {
    pub len: usize,
    pub r: usize,
    pub sums: Vec<BigInt>,
    pub nonzero: Vec<BigInt>,
}

impl HTable {
    pub fn from_census(census: &PatternCensus, r: usize) -> Self {
        let conv = |v: Vec<u64>| v.into_iter().map(BigInt::from).collect();
        HTable {
            len: census.len(),
            r,
            sums: conv(census.h_sums(r)),
            nonzero: conv(census.h_nonzero_counts(r)),
        }
    }

    /// E_{x~p}[h_{g_r}(x)], exact.
    pub fn expectation(&self, p: &BigRational) -> BigRational {
        bernstein_sum(&self.sums, p)
    }

    /// Pr_{x~p}[h_{g_r}(x) != 0], exact.
    pub fn nonzero_probability(&self, p: &BigRational) -> BigRational {
        bernstein_sum(&self.nonzero, p)
    }
}

/// E_{x~p}[h_{g_r}(x)] by exhaustive enumeration.
pub fn exact_h_expectation(code: &LinearCode, r: usize, p: f64, budgets: &Budgets) -> Result<f64> {
    check_p(p)?;
    let census = PatternCensus::new(code, budgets)?;
    let h = HTable::from_census(&census, r);
    let n = census.len() as i32;
    Ok(h.sums
        .iter()
        .enumerate()
        .map(|(w, s)| s.to_f64().unwrap_or(0.0) * p.powi(w as i32) * (1.0 - p).powi(n - w as i32))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{rm_code, RmParams};
    use crate::exact::rational;
    use crate::gf2::BitMatrix;

    fn rm(n: usize, d: usize) -> LinearCode {
        rm_code(RmParams::new(n, d).unwrap(), &Budgets::default()).unwrap()
    }

    fn table(code: &LinearCode, rmax: usize) -> WeightTable {
        exact_weight_table(code, rmax, &Budgets::default()).unwrap()
    }

    #[test]
    fn repetition_table_and_curve() {
        let t = table(&rm(3, 0), 2);
        let one = BigUint::one();
        assert_eq!(t.counts[1][8], one);
        assert!(t.counts[1][..8].iter().all(Zero::is_zero));
        assert!(t.counts[2].iter().all(Zero::is_zero));
        assert!((exact_fr(&t, 1, 0.5).unwrap() - 1.0 / 256.0).abs() < 1e-15);
        assert_eq!(
            exact_fr_rational(&t, 1, &rational(1, 2)).unwrap(),
            rational(1, 256)
        );
        assert_eq!(exact_integral_gap(&t, 1).unwrap(), rational(1, 9));
    }

    #[test]
    fn zeroth_row_is_binomial() {
        let t = table(&rm(4, 1), 1);
        for w in 0..=16 {
            assert_eq!(t.counts[0][w], binomial(16, w));
        }
    }

    #[test]
    fn rm31_counts_and_gap() {
        let c = rm(3, 1);
        let t = table(&c, 6);
        assert_eq!(t.counts[1][4], BigUint::from(14u32));
        let gap = exact_integral_gap(&t, 1).unwrap();
        assert!(gap <= rational(1, 4), "{gap}");
        assert!(gap > BigRational::zero());
        // rows past the dimension vanish, so their gap is zero
        assert_eq!(exact_integral_gap(&t, 5).unwrap(), BigRational::zero());
        assert!(exact_integral_gap(&t, 6).is_err());
    }

    #[test]
    fn endpoints() {
        let t = table(&rm(3, 1), 5);
        for r in 1..=5 {
            assert_eq!(exact_fr(&t, r, 0.0).unwrap(), 0.0);
        }
        for r in 0..=4 {
            assert_eq!(exact_fr(&t, r, 1.0).unwrap(), 1.0);
        }
        assert_eq!(exact_fr(&t, 5, 1.0).unwrap(), 0.0);
        assert!(exact_fr(&t, 1, 1.5).is_err());
        assert!(exact_fr(&t, 6, 0.5).is_err());
    }

    #[test]
    fn curves_are_ordered_and_increasing() {
        for code in [rm(3, 1), rm(3, 2), rm(4, 1)] {
            let t = table(&code, code.dim() + 1);
            for r in 0..=code.dim() {
                let mut prev = -1.0;
                for i in 0..=20 {
                    let p = f64::from(i) / 20.0;
                    let (a, b) = (exact_fr(&t, r, p).unwrap(), exact_fr(&t, r + 1, p).unwrap());
                    assert!(b <= a + 1e-12);
                    assert!(a >= prev - 1e-12);
                    prev = a;
                }
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let t = table(&rm(3, 1), 2);
        let p = rational(3, 10);
        let h = rational(1, 1_000_000);
        let fd = (exact_fr_rational(&t, 1, &(&p + &h)).unwrap()
            - exact_fr_rational(&t, 1, &(&p - &h)).unwrap())
            / (rational(2, 1) * &h);
        let d = fr_derivative_rational(&t, 1, &p).unwrap();
        assert!(crate::exact::abs_diff_f64(&fd, &d) < 1e-8);
    }

    #[test]
    fn h_expectation_examples() {
        let b = Budgets::default();
        let rep = rm(3, 0);
        for p in [0.0, 0.3, 0.7, 1.0] {
            let e = exact_h_expectation(&rep, 1, p, &b).unwrap();
            assert!((e - 8.0 * p.powi(8)).abs() < 1e-12);
        }
        // full space of dimension 3 at p = 1: h = |supp C| = 3 when r = k
        let full = LinearCode::new(BitMatrix::identity(3)).unwrap();
        assert!((exact_h_expectation(&full, 3, 1.0, &b).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let t = table(&rm(3, 1), 2);
        let v = t.to_json();
        assert_eq!(v["A"][0][4], "70");
        assert_eq!(WeightTable::from_json(&v).unwrap(), t);
        assert!(WeightTable::from_json(&json!({"N": 1})).is_err());
    }
}
