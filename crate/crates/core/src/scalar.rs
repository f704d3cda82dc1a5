//! Scalar abstraction shared by the linear-algebra and LP code.
//!
//! Everything that manipulates matrices (rank, simplex, polytope membership)
//! is generic over [`Scalar`]. The exact instantiation uses [`BigRational`]
//! and has zero tolerance; the floating instantiations compare against a fixed
//! absolute tolerance.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub trait Scalar:
    Clone + PartialOrd + Debug + Display + FromStr + Signed + Send + Sync + 'static
{
    /// True when arithmetic is exact and comparisons need no tolerance.
    const EXACT: bool;

    /// Absolute tolerance below which a value counts as zero.
    fn tolerance() -> Self;

    fn from_rational(r: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    fn from_usize(n: usize) -> Self;

    #[inline]
    fn is_negligible(&self) -> bool {
        self.abs() <= Self::tolerance()
    }

    #[inline]
    fn is_strictly_positive(&self) -> bool {
        *self > Self::tolerance()
    }

    #[inline]
    fn is_strictly_negative(&self) -> bool {
        *self < -Self::tolerance()
    }

    /// `self / other`, both non-zero denominators assumed.
    fn ratio(num: usize, den: usize) -> Self {
        Self::from_usize(num) / Self::from_usize(den)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_usize(n: usize) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-9
    }

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_usize(n: usize) -> Self {
        n as f64
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-5
    }

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f32(r).unwrap_or(f32::NAN)
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }

    fn from_usize(n: usize) -> Self {
        n as f32
    }
}

/// Parses an exact decimal (`"0.3"`, `"-1.25e-2"`), an integer, or a fraction
/// (`"3/10"`) into a rational.
pub fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = all_digits.parse().map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Exact rational value of a finite `f64` (every finite double is a dyadic rational).
pub fn rational_from_f64(x: f64) -> Result<BigRational, Error> {
    BigRational::from_f64(x).ok_or_else(|| Error::Parse(format!("non-finite number {x}")))
}

/// Lowest common multiple of the denominators, as a `usize`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> Option<usize> {
    let mut acc = BigInt::one();
    for v in values {
        acc = num_integer::Integer::lcm(&acc, v.denom());
    }
    acc.to_usize()
}
