//! Exact rationals, decimal grids and rigorous real enclosures.
//!
//! Inequalities involving `2^x` for rational or irrational `x` are decided
//! by enclosing every logarithm and square root in a rational interval whose
//! width shrinks with the requested precision. A comparison is settled once
//! an enclosure excludes the boundary; no floating point is involved.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Precisions (fractional bits) tried in turn by [`decide`].
pub const PRECISION_LADDER: [u32; 4] = [64, 256, 1024, 4096];

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_biguint(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // fall back through logarithms for huge magnitudes
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `a/b` in lowest terms, or `a` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Inverse of [`format_rational`]; also accepts decimals.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("bad numerator in {s:?}")))?;
            let den: BigInt = b
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("bad denominator in {s:?}")))?;
            if den.is_zero() {
                return Err(Error::input(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(num, den))
        }
        None => parse_decimal(s),
    }
}

/// Exact value of a decimal literal such as `0.1`, `-2.50` or `1e-3`.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::input(format!("not a decimal number: {s:?}"));
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().map_err(|_| bad())?
    };
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Parses `start:stop:step` (inclusive), a comma-separated list, or a single value.
pub fn parse_grid(spec: &str) -> Result<Vec<BigRational>> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (
                parse_decimal(start)?,
                parse_decimal(stop)?,
                parse_decimal(step)?,
            );
            if !step.is_positive() {
                return Err(Error::input("grid step must be positive"));
            }
            if stop < start {
                return Err(Error::input("grid stop precedes start"));
            }
            let mut out = Vec::new();
            let mut p = start;
            while p <= stop {
                out.push(p.clone());
                p += &step;
            }
            Ok(out)
        }
        [single] => single.split(',').map(parse_decimal).collect(),
        _ => Err(Error::input(format!(
            "bad grid {spec:?}; expected start:stop:step"
        ))),
    }
}

/// Closed rational interval [lo, hi].
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", to_f64(&self.lo), to_f64(&self.hi))
    }
}

impl Interval {
    pub fn exact(q: BigRational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn integer(x: i64) -> Self {
        Self::exact(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().expect("nonempty").clone();
        let hi = products.iter().max().expect("nonempty").clone();
        Interval { lo, hi }
    }

    /// Sign of every point in the interval, if they agree.
    pub fn sign(&self) -> Option<Ordering> {
        let zero = BigRational::zero();
        if self.lo > zero {
            Some(Ordering::Greater)
        } else if self.hi < zero {
            Some(Ordering::Less)
        } else if self.lo == zero && self.hi == zero {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Where the interval sits relative to `x`, if decided.
    pub fn cmp_to(&self, x: &BigRational) -> Option<Ordering> {
        self.sub(&Interval::exact(x.clone())).sign()
    }

    pub fn floor(&self) -> Option<BigInt> {
        let (a, b) = (self.lo.floor().to_integer(), self.hi.floor().to_integer());
        (a == b).then_some(a)
    }

    pub fn ceil(&self) -> Option<BigInt> {
        let (a, b) = (self.lo.ceil().to_integer(), self.hi.ceil().to_integer());
        (a == b).then_some(a)
    }

    pub fn midpoint_f64(&self) -> f64 {
        (to_f64(&self.lo) + to_f64(&self.hi)) / 2.0
    }

    /// Enclosure of the square root of a nonnegative interval.
    pub fn sqrt(&self, bits: u32) -> Interval {
        assert!(!self.lo.is_negative(), "square root of a negative interval");
        let scale = BigInt::one() << (2 * bits as usize);
        let denom = BigInt::one() << bits as usize;
        let lo_scaled = (&self.lo * BigRational::from_integer(scale.clone()))
            .floor()
            .to_integer();
        let hi_scaled = (&self.hi * BigRational::from_integer(scale))
            .ceil()
            .to_integer();
        let lo_root = lo_scaled.sqrt();
        let mut hi_root = hi_scaled.sqrt();
        if &hi_root * &hi_root < hi_scaled {
            hi_root += 1;
        }
        Interval {
            lo: BigRational::new(lo_root, denom.clone()),
            hi: BigRational::new(hi_root, denom),
        }
    }

    /// Enclosure of log2(m) for a positive integer, to about `bits` fractional bits.
    pub fn log2_int(m: &BigUint, bits: u32) -> Interval {
        assert!(!m.is_zero(), "log2 of zero");
        let l = m.bits() - 1;
        let whole = BigRational::from_integer(BigInt::from(l));
        if m.trailing_zeros() == Some(l) {
            return Interval::exact(whole);
        }
        let q = u64::from(bits) + 64;
        let (mut ylo, mut yhi) = if q >= l {
            let y = m << (q - l);
            (y.clone(), y)
        } else {
            let y = m >> (l - q);
            let exact = (&y << (l - q)) == *m;
            (y.clone(), if exact { y } else { y + 1u32 })
        };
        let two = BigUint::one() << (q + 1);
        let round_up = (BigUint::one() << q) - 1u32;
        let mut acc = BigUint::zero();
        let mut determined = 0u64;
        for _ in 0..bits {
            let lo_sq = (&ylo * &ylo) >> q;
            let hi_sq = (&yhi * &yhi + &round_up) >> q;
            let bit = if lo_sq >= two {
                ylo = lo_sq >> 1;
                yhi = (hi_sq + 1u32) >> 1;
                1u32
            } else if hi_sq < two {
                ylo = lo_sq;
                yhi = hi_sq;
                0u32
            } else {
                break;
            };
            acc = (acc << 1) + bit;
            determined += 1;
        }
        let den = BigInt::one() << determined as usize;
        let acc = BigInt::from(acc);
        Interval {
            lo: &whole + BigRational::new(acc.clone(), den.clone()),
            hi: &whole + BigRational::new(acc + 1, den),
        }
    }

    /// Enclosure of log2(q) for a positive rational.
    pub fn log2(q: &BigRational, bits: u32) -> Interval {
        assert!(q.is_positive(), "log2 of a nonpositive number");
        let num = q.numer().to_biguint().expect("positive");
        let den = q.denom().to_biguint().expect("positive");
        Interval::log2_int(&num, bits).sub(&Interval::log2_int(&den, bits))
    }
}

/// Evaluates `f` at increasing precision until its sign is determined.
pub fn decide(f: impl Fn(u32) -> Interval) -> Option<Ordering> {
    PRECISION_LADDER.iter().find_map(|&bits| f(bits).sign())
}

/// Rigorous floor of a real given by enclosures.
pub fn decide_floor(f: impl Fn(u32) -> Interval) -> Option<BigInt> {
    PRECISION_LADDER.iter().find_map(|&bits| f(bits).floor())
}

pub fn decide_ceil(f: impl Fn(u32) -> Interval) -> Option<BigInt> {
    PRECISION_LADDER.iter().find_map(|&bits| f(bits).ceil())
}

/// Enclosure of sqrt(n * log2 n).
pub fn sqrt_n_log_n(n: usize, bits: u32) -> Interval {
    let nn = BigRational::from_integer(BigInt::from(n));
    Interval::log2_int(&BigUint::from(n), bits)
        .scale(&nn)
        .sqrt(bits)
}

/// Enclosure of sqrt(log2 n / n).
pub fn sqrt_log_n_over_n(n: usize, bits: u32) -> Interval {
    let inv = BigRational::new(BigInt::one(), BigInt::from(n));
    Interval::log2_int(&BigUint::from(n), bits)
        .scale(&inv)
        .sqrt(bits)
}

/// Exact sum of `weights[w] * p^w (1-p)^(len-w)`.
pub fn bernstein_sum(weights: &[BigInt], p: &BigRational) -> BigRational {
    let len = weights.len() - 1;
    let q = BigRational::one() - p;
    let mut total = BigRational::zero();
    for (w, c) in weights.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = num_traits::pow(p.clone(), w) * num_traits::pow(q.clone(), len - w);
        total += term * BigRational::from_integer(c.clone());
    }
    total
}

/// |a - b| as an f64, for reporting exact discrepancies.
pub fn abs_diff_f64(a: &BigRational, b: &BigRational) -> f64 {
    to_f64(&(a - b).abs())
}
