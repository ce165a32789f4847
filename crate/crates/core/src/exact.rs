//! Checked 128-bit integers and reduced rationals.

use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Signed exact integer. Arithmetic goes through the checked helpers below.
pub type ExactInt = i128;

#[inline]
pub fn add(a: ExactInt, b: ExactInt) -> Result<ExactInt> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub fn sub(a: ExactInt, b: ExactInt) -> Result<ExactInt> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[inline]
pub fn mul(a: ExactInt, b: ExactInt) -> Result<ExactInt> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Product of all factors, failing on the first overflow.
pub fn product(factors: &[ExactInt]) -> Result<ExactInt> {
    factors.iter().try_fold(1, |acc, &f| mul(acc, f))
}

/// `num / den`, which must divide exactly.
pub fn div_exact(num: ExactInt, den: ExactInt, what: &'static str) -> Result<ExactInt> {
    if den == 0 {
        return Err(Error::NonIntegralResult(what));
    }
    if num.checked_rem(den).ok_or(Error::Overflow)? != 0 {
        return Err(Error::NonIntegralResult(what));
    }
    num.checked_div(den).ok_or(Error::Overflow)
}

pub fn from_usize(v: usize) -> Result<ExactInt> {
    ExactInt::try_from(v).map_err(|_| Error::Overflow)
}

fn gcd(mut a: ExactInt, mut b: ExactInt) -> ExactInt {
    // operands are non-negative here
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A rational number kept in lowest terms with a positive denominator.
///
/// Because the representation is canonical, derived equality is value
/// equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: ExactInt,
    den: ExactInt,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };

    pub fn new(num: ExactInt, den: ExactInt) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator"));
        }
        let (num, den) = if den < 0 {
            (num.checked_neg().ok_or(Error::Overflow)?, den.checked_neg().ok_or(Error::Overflow)?)
        } else {
            (num, den)
        };
        let g = gcd(num.checked_abs().ok_or(Error::Overflow)?, den);
        Ok(Rational { num: num / g, den: den / g })
    }

    pub const fn from_int(v: ExactInt) -> Self {
        Rational { num: v, den: 1 }
    }

    pub fn num(&self) -> ExactInt {
        self.num
    }

    pub fn den(&self) -> ExactInt {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// The value as an integer, if the denominator is 1.
    pub fn to_integer(&self) -> Option<ExactInt> {
        self.is_integer().then_some(self.num)
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        let num = add(mul(self.num, other.den)?, mul(other.num, self.den)?)?;
        Rational::new(num, mul(self.den, other.den)?)
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        let num = sub(mul(self.num, other.den)?, mul(other.num, self.den)?)?;
        Rational::new(num, mul(self.den, other.den)?)
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        Rational::new(mul(self.num, other.num)?, mul(self.den, other.den)?)
    }

    pub fn abs(self) -> Result<Self> {
        Ok(Rational { num: self.num.checked_abs().ok_or(Error::Overflow)?, den: self.den })
    }

    /// Exact comparison by cross multiplication.
    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(mul(self.num, other.den)?.cmp(&mul(other.num, self.den)?))
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl From<ExactInt> for Rational {
    fn from(v: ExactInt) -> Self {
        Rational::from_int(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
