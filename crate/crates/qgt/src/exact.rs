//! Arbitrary-precision rational arithmetic and q-product utilities.
//!
//! Every core result of the crate is an [`ExactScalar`] (a reduced fraction of
//! big integers); floating point only appears in the truncated series
//! evaluator and in statistical tests. Values are immutable after
//! construction and safe to share between threads.

use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// An exact rational number, always stored reduced with positive denominator.
///
/// Equality is structural, which coincides with numeric equality because the
/// representation is canonical. JSON encoding is
/// `{"num": "<decimal>", "den": "<decimal>"}` with string fields so consumers
/// without 64-bit headroom stay safe.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        ExactScalar(BigRational::new(num, den))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactScalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` from machine integers; panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactScalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        ExactScalar(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        ExactScalar(self.0.recip())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Integer power with negative exponents allowed (base must be nonzero).
    pub fn pow_i64(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        assert!(!self.is_zero() || k > 0, "zero to a negative power");
        let e = i32::try_from(k).expect("exponent out of i32 range");
        ExactScalar(num_traits::Pow::pow(&self.0, e))
    }

    /// Lossy conversion for statistics and plotting.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Accepts `p`, `p/q` and optional leading sign, e.g. `-3/7`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(ExactScalar(BigRational::from_integer(n)))
            }
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(ExactScalar(BigRational::new(n, d)))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(&self.0, &rhs.0))
            }
        }
        impl<'a> $trait<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign for ExactScalar {
    fn sub_assign(&mut self, rhs: ExactScalar) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for ExactScalar {
    fn mul_assign(&mut self, rhs: ExactScalar) {
        self.0 *= rhs.0;
    }
}

impl DivAssign for ExactScalar {
    fn div_assign(&mut self, rhs: ExactScalar) {
        self.0 /= rhs.0;
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ExactScalar", 2)?;
        s.serialize_field("num", &self.0.numer().to_string())?;
        s.serialize_field("den", &self.0.denom().to_string())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: String,
            den: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        let num = BigInt::from_str(&raw.num).map_err(D::Error::custom)?;
        let den = BigInt::from_str(&raw.den).map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(ExactScalar(BigRational::new(num, den)))
    }
}

/// Exact determinant by Gaussian elimination with nonzero pivoting.
///
/// Panics on a non-square input; returns zero for singular matrices.
pub fn determinant(rows: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = rows.len();
    if n == 0 {
        return ExactScalar::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "non-square matrix");
    let mut m: Vec<Vec<ExactScalar>> = rows.to_vec();
    let mut det = ExactScalar::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return ExactScalar::zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    det
}

/// The deformation parameter, constrained to `0 < q < 1` at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QParam {
    q: ExactScalar,
}

impl QParam {
    pub fn new(q: ExactScalar) -> Result<Self> {
        if q.is_positive() && q < ExactScalar::one() {
            Ok(QParam { q })
        } else {
            Err(Error::Parse(format!("q must satisfy 0 < q < 1, got {q}")))
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        Self::new(ExactScalar::from_ratio(num, den))
    }

    pub fn value(&self) -> &ExactScalar {
        &self.q
    }

    /// q^-1, as a plain scalar (it exceeds 1, so it is not itself a QParam).
    pub fn inverse(&self) -> ExactScalar {
        self.q.recip()
    }
}

/// q^k, with negative k yielding reciprocal powers.
pub fn q_pow(q: &QParam, k: i64) -> ExactScalar {
    q.value().pow_i64(k)
}

/// The truncated Euler product `prod_{i=1}^{n} (1 - q^i)`.
pub fn q_factor_product(q: &QParam, n: u32) -> ExactScalar {
    let mut acc = ExactScalar::one();
    let mut qi = ExactScalar::one();
    for _ in 0..n {
        qi = qi * q.value();
        acc = acc * (ExactScalar::one() - &qi);
    }
    acc
}

/// An exact enclosure of the infinite Euler product `prod_{i>=1} (1 - q^i)`.
///
/// `upper` is the truncation at n factors; `lower` multiplies it by the
/// elementary tail bound `1 - q^{n+1}/(1-q)`. Fails with
/// [`Error::DegenerateEnclosure`] when the tail bound is vacuous; raise `n`.
pub fn euler_product_enclosure(q: &QParam, n: u32) -> Result<(ExactScalar, ExactScalar)> {
    let one = ExactScalar::one();
    let tail = q.value().pow_i64(i64::from(n) + 1) / (&one - q.value());
    if tail >= one {
        return Err(Error::DegenerateEnclosure);
    }
    let upper = q_factor_product(q, n);
    let lower = &upper * (one - tail);
    Ok((lower, upper))
}
