//! Exact rational scalars and the extended (possibly infinite) distance type.
//!
//! Every metric value, breakpoint, radius and tolerance in the crate is a
//! [`Rational`]. Distances between elements in different components are
//! [`Extended::Infinite`], which is never a rational.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("not a rational literal: {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// A rational number kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Absolute difference `|self - other|`.
    pub fn dist(&self, other: &Rational) -> Rational {
        (self - other).abs()
    }

    pub fn min_of(a: &Rational, b: &Rational) -> Rational {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max_of(a: &Rational, b: &Rational) -> Rational {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Lossy conversion, for display and timing only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    /// The rational with the least denominator (then least numerator) in the
    /// interval between `lo` and `hi`, honoring endpoint inclusion.
    ///
    /// Returns `None` when the interval is empty. Requires `lo >= 0`.
    pub fn simplest_between(lo: &Rational, lo_closed: bool, hi: &Rational, hi_closed: bool) -> Option<Rational> {
        if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
            return None;
        }
        debug_assert!(!lo.is_negative());
        let (num, den) = simplest_rec(lo.0.clone(), lo_closed, Some(hi.0.clone()), hi_closed);
        // The continued-fraction descent yields the least denominator; the
        // least numerator for that denominator is then a ceiling.
        let den_r = BigRational::from_integer(den.clone());
        let mut p = (lo.0.clone() * &den_r).ceil().to_integer();
        let first = Rational(BigRational::new(p.clone(), den.clone()));
        if &first == lo && !lo_closed {
            p += 1;
        }
        let candidate = Rational(BigRational::new(p, den.clone()));
        debug_assert!(candidate <= *hi);
        let _ = num;
        Some(candidate)
    }
}

/// Simplest rational in a nonempty interval with nonnegative lower end and an
/// optional (infinite when `None`) upper end. Returns numerator, denominator.
fn simplest_rec(lo: BigRational, lo_closed: bool, hi: Option<BigRational>, hi_closed: bool) -> (BigInt, BigInt) {
    let mut n = lo.ceil().to_integer();
    if BigRational::from_integer(n.clone()) == lo && !lo_closed {
        n += 1;
    }
    let n_r = BigRational::from_integer(n.clone());
    let fits = match &hi {
        None => true,
        Some(h) => n_r < *h || (n_r == *h && hi_closed),
    };
    if fits {
        return (n, BigInt::one());
    }
    // No integer inside, so lo and hi share the integer part k and
    // k < lo, hi < k + 1 (up to endpoint inclusion).
    let k = lo.floor().to_integer();
    let k_r = BigRational::from_integer(k.clone());
    let hi = hi.expect("bounded interval without integer");
    let new_lo = (hi - &k_r).recip();
    let lo_frac = lo - &k_r;
    let new_hi = if lo_frac.is_zero() { None } else { Some(lo_frac.recip()) };
    let (p, q) = simplest_rec(new_lo, hi_closed, new_hi, lo_closed);
    // x = k + 1/(p/q) = (k p + q) / p
    (k * &p + q, p)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0.clone())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `"p/q"` or an integer literal, with an optional leading `-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let parse_int = |part: &str| -> Result<BigInt, ParseRationalError> {
            let ok = !part.is_empty()
                && part.strip_prefix('-').unwrap_or(part).chars().all(|c| c.is_ascii_digit())
                && part != "-";
            if !ok {
                return Err(ParseRationalError::Malformed(s.to_string()));
            }
            part.parse::<BigInt>().map_err(|_| ParseRationalError::Malformed(s.to_string()))
        };
        match t.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_int(t)?))),
            Some((p, q)) => {
                let p = parse_int(p)?;
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(ParseRationalError::ZeroDenominator(s.to_string()));
                }
                Ok(Rational(BigRational::new(p, q)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
                n.to_string().parse().map_err(serde::de::Error::custom)
            }
            _ => Err(serde::de::Error::custom(format!("expected a rational string, got {v}"))),
        }
    }
}

/// A nonnegative distance that may be infinite.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Extended {
    Finite(Rational),
    Infinite,
}

impl Extended {
    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            Extended::Infinite => None,
        }
    }

    /// `min(self, cap)`, always finite.
    pub fn truncate(&self, cap: &Rational) -> Rational {
        match self {
            Extended::Finite(r) if r < cap => r.clone(),
            _ => cap.clone(),
        }
    }

    pub fn double(&self) -> Extended {
        match self {
            Extended::Finite(r) => Extended::Finite(r + r),
            Extended::Infinite => Extended::Infinite,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Extended::Finite(r) if r.is_zero())
    }
}

impl Add for &Extended {
    type Output = Extended;
    fn add(self, rhs: &Extended) -> Extended {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinite,
        }
    }
}

impl From<Rational> for Extended {
    fn from(r: Rational) -> Self {
        Extended::Finite(r)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(r) => write!(f, "{r}"),
            Extended::Infinite => write!(f, "INF"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Shorthand used heavily in tests and fixtures.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}
