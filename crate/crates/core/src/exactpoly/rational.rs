use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational number used for exponents.
///
/// Always kept in lowest terms with a positive denominator, so the derived
/// `Eq`/`Hash` coincide with numeric equality. Arithmetic is overflow-checked:
/// an overflow panics instead of wrapping. Exponents in this crate are
/// quadratic in the input sizes, far below the `i64` range.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: i64,
    den: i64,
}

impl ExactRational {
    pub const ZERO: ExactRational = ExactRational { num: 0, den: 1 };
    pub const ONE: ExactRational = ExactRational { num: 1, den: 1 };

    /// Builds `num/den` in lowest terms.
    ///
    /// Panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num.checked_neg().expect("exponent overflow");
            den = den.checked_neg().expect("exponent overflow");
        }
        ExactRational { num, den }
    }

    pub const fn from_integer(n: i64) -> Self {
        ExactRational { num: n, den: 1 }
    }

    /// `n/2`, the shape of every quadratic-form exponent.
    pub fn half(n: i64) -> Self {
        Self::new(n, 2)
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.num, &self.den)
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Self {
        *self - Self::from_integer(self.floor())
    }

    /// Returns the integer value if the rational is integral.
    pub fn to_integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.num)
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let l = self.den.lcm(&other.den);
        let a = self.num.checked_mul(l / self.den)?;
        let b = other.num.checked_mul(l / other.den)?;
        Some(Self::new(a.checked_add(b)?, l))
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        // cross-reduce first to keep intermediates small
        let g1 = self.num.gcd(&other.den).max(1);
        let g2 = other.num.gcd(&self.den).max(1);
        let num = (self.num / g1).checked_mul(other.num / g2)?;
        let den = (self.den / g2).checked_mul(other.den / g1)?;
        Some(Self::new(num, den))
    }
}

impl Default for ExactRational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("exponent overflow")
    }
}

impl AddAssign for ExactRational {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        ExactRational {
            num: self.num.checked_neg().expect("exponent overflow"),
            den: self.den,
        }
    }
}

impl Mul for ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("exponent overflow")
    }
}

impl Mul<i64> for ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: i64) -> Self {
        self * ExactRational::from_integer(rhs)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("invalid rational `{s}`"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Self::new(n, d))
            }
            None => s.parse().map(Self::from_integer).map_err(|_| bad()),
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
