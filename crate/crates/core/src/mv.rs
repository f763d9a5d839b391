//! Exact Łukasiewicz (MV-algebra) arithmetic on rational truth values.
//!
//! Every value lives in `[0, 1]` and is stored as an arbitrary-precision
//! rational, so residuation and degree comparisons are decided by exact
//! equality. The finite chains `Ł_k = {0, 1/k, ..., 1}` are subalgebras and
//! serve as exhaustive test universes throughout the crate.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("truth value {0} is outside [0,1]")]
    OutOfRange(String),
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
}

/// A truth value: an exact rational in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruthValue(BigRational);

impl TruthValue {
    pub fn new(r: BigRational) -> Result<Self, ValueError> {
        if r.is_negative() || r > BigRational::one() {
            return Err(ValueError::OutOfRange(fmt_ratio(&r)));
        }
        Ok(TruthValue(r))
    }

    /// `numer/denom`; fails outside `[0,1]` or on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Result<Self, ValueError> {
        if denom == 0 {
            return Err(ValueError::Malformed(format!("{numer}/{denom}")));
        }
        Self::new(BigRational::new(numer.into(), denom.into()))
    }

    /// Shorthand for literals known to be in range. Panics otherwise.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::ratio(numer, denom).expect("literal truth value out of range")
    }

    pub fn zero() -> Self {
        TruthValue(BigRational::zero())
    }

    pub fn one() -> Self {
        TruthValue(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    // Results of the algebra are in range by construction.
    fn clamp(r: BigRational) -> Self {
        if r.is_negative() {
            Self::zero()
        } else if r > BigRational::one() {
            Self::one()
        } else {
            TruthValue(r)
        }
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_ratio(&self.0))
    }
}

impl FromStr for TruthValue {
    type Err = ValueError;

    /// Accepts `p/q` or an integer; normalizes to lowest terms.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ValueError::Malformed(t.to_string());
        let parse_int = |x: &str| -> Result<BigInt, ValueError> {
            let x = x.trim();
            if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            x.parse::<BigInt>().map_err(|_| bad())
        };
        let r = match t.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(parse_int(n)?, d)
            }
            None => BigRational::from_integer(parse_int(t)?),
        };
        Self::new(r)
    }
}

/// Łukasiewicz conjunction `a ⊗ b = max(0, a + b - 1)`.
pub fn luk_and(a: &TruthValue, b: &TruthValue) -> TruthValue {
    TruthValue::clamp(&a.0 + &b.0 - BigRational::one())
}

/// Residuum `a ⇒ b = min(1, 1 - a + b)`.
pub fn luk_imp(a: &TruthValue, b: &TruthValue) -> TruthValue {
    TruthValue::clamp(BigRational::one() - &a.0 + &b.0)
}

pub fn luk_neg(a: &TruthValue) -> TruthValue {
    TruthValue(BigRational::one() - &a.0)
}

/// Łukasiewicz disjunction `a ⊕ b = min(1, a + b)`.
pub fn luk_or(a: &TruthValue, b: &TruthValue) -> TruthValue {
    TruthValue::clamp(&a.0 + &b.0)
}

pub fn meet(a: &TruthValue, b: &TruthValue) -> TruthValue {
    a.min(b).clone()
}

pub fn join(a: &TruthValue, b: &TruthValue) -> TruthValue {
    a.max(b).clone()
}

/// `a ⇔ b = (a ⇒ b) ∧ (b ⇒ a) = 1 - |a - b|`.
pub fn biresiduum(a: &TruthValue, b: &TruthValue) -> TruthValue {
    TruthValue(BigRational::one() - (&a.0 - &b.0).abs())
}

/// n-fold `⊗` power, `max(0, n·a - (n-1))`. `n = 0` yields the unit 1.
pub fn power(a: &TruthValue, n: u32) -> TruthValue {
    if n == 0 {
        return TruthValue::one();
    }
    let n = BigRational::from_integer(n.into());
    TruthValue::clamp(&n * &a.0 - (n - BigRational::one()))
}

/// n-fold `⊕` multiple, `min(1, n·a)`. `n = 0` yields 0.
pub fn multiple(a: &TruthValue, n: u32) -> TruthValue {
    TruthValue::clamp(BigRational::from_integer(n.into()) * &a.0)
}

/// The finite MV-chain `Ł_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MvChain {
    k: u32,
}

impl MvChain {
    /// `k` must be at least 1.
    pub fn new(k: u32) -> Option<Self> {
        (k >= 1).then_some(MvChain { k })
    }

    pub fn granularity(&self) -> u32 {
        self.k
    }

    /// `0, 1/k, ..., 1` in ascending order.
    pub fn values(&self) -> Vec<TruthValue> {
        chain_values(self.k)
    }

    pub fn len(&self) -> usize {
        self.k as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: &TruthValue) -> bool {
        (BigInt::from(self.k) % v.denom()).is_zero()
    }

    /// The smallest chain containing every value in `vals` (lcm of denominators).
    pub fn covering<'a>(vals: impl IntoIterator<Item = &'a TruthValue>) -> Option<Self> {
        let l = vals
            .into_iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        l.to_u32().and_then(Self::new)
    }
}

pub fn chain_values(k: u32) -> Vec<TruthValue> {
    assert!(k >= 1, "chain granularity must be positive");
    (0..=k)
        .map(|i| {
            TruthValue(BigRational::new(
                BigInt::from(i),
                BigInt::from(k),
            ))
        })
        .collect()
}
