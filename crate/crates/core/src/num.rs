//! Scalar abstraction shared by the exact (rational) and float evaluation modes.
//!
//! Stability-set membership hinges on strict inequalities, so every routine in
//! the crate is generic over [`Scalar`]. [`Exact`] is the default; `f64`
//! compares with an absolute tolerance of `1e-9`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseScalarError;

/// Arbitrary-precision rational number.
pub type Exact = BigRational;

/// Float-mode comparison tolerance.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for rational arithmetic.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(value: i64) -> Self;
    fn ratio(numer: i64, denom: i64) -> Self;
    /// Parses `"0.25"`, `"-3"`, `"1e-3"` or `"1/3"`. Decimal input is taken
    /// at face value: `"0.1"` is exactly one tenth in exact mode.
    fn parse(text: &str) -> Result<Self, ParseScalarError>;
    fn to_f64(&self) -> f64;
    /// Absolute tolerance used by the comparison helpers below.
    fn tolerance() -> Self;
    /// Exact square root when one exists in the number system.
    fn sqrt(&self) -> Option<Self>;
    /// Human-readable rendering. Exact values print as a decimal when it
    /// terminates and as `n/d` otherwise; floats print shortest round-trip.
    fn render(&self) -> String;

    fn from_f64(value: f64) -> Result<Self, ParseScalarError> {
        if !value.is_finite() {
            return Err(ParseScalarError::NotFinite);
        }
        // Shortest round-trip representation keeps "0.1" as one tenth.
        Self::parse(&format!("{value}"))
    }

    fn is_zero_tol(&self) -> bool {
        approx_eq(self, &Self::zero())
    }
}

/// `a > b` beyond tolerance.
pub fn gt<S: Scalar>(a: &S, b: &S) -> bool {
    a.clone() - b.clone() > S::tolerance()
}

/// `a >= b` within tolerance.
pub fn ge<S: Scalar>(a: &S, b: &S) -> bool {
    a.clone() - b.clone() >= -S::tolerance()
}

pub fn approx_eq<S: Scalar>(a: &S, b: &S) -> bool {
    ge(a, b) && ge(b, a)
}

pub fn max<S: Scalar>(a: S, b: S) -> S {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn min<S: Scalar>(a: S, b: S) -> S {
    if a <= b {
        a
    } else {
        b
    }
}

/// `max(x, 0)`.
pub fn pos_part<S: Scalar>(x: S) -> S {
    max(x, S::zero())
}

pub fn sum<S: Scalar, I: IntoIterator<Item = S>>(items: I) -> S {
    items.into_iter().fold(S::zero(), |acc, x| acc + x)
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn parse(text: &str) -> Result<Self, ParseScalarError> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| ParseScalarError::invalid(text))?;
            let d: BigInt = d.trim().parse().map_err(|_| ParseScalarError::invalid(text))?;
            if d.is_zero() {
                return Err(ParseScalarError::ZeroDenominator);
            }
            return Ok(BigRational::new(n, d));
        }
        parse_decimal(text)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn tolerance() -> Self {
        <BigRational as Zero>::zero()
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| BigRational::new(n, d))
    }

    fn render(&self) -> String {
        render_rational(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(value: i64) -> Self {
        value as f64
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn parse(text: &str) -> Result<Self, ParseScalarError> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n: f64 = n.trim().parse().map_err(|_| ParseScalarError::invalid(text))?;
            let d: f64 = d.trim().parse().map_err(|_| ParseScalarError::invalid(text))?;
            if d == 0.0 {
                return Err(ParseScalarError::ZeroDenominator);
            }
            return Ok(n / d);
        }
        let v: f64 = text.parse().map_err(|_| ParseScalarError::invalid(text))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ParseScalarError::NotFinite)
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn tolerance() -> Self {
        FLOAT_TOLERANCE
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

fn parse_decimal(text: &str) -> Result<Exact, ParseScalarError> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => {
            let exp: i64 = text[i + 1..]
                .parse()
                .map_err(|_| ParseScalarError::invalid(text))?;
            (&text[..i], exp)
        }
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit())
    {
        return Err(ParseScalarError::invalid(text));
    }
    let all: BigInt = format!("{int_part}{frac_part}0")
        .parse::<BigInt>()
        .map_err(|_| ParseScalarError::invalid(text))?
        / BigInt::from(10);
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 4096 {
        return Err(ParseScalarError::invalid(text));
    }
    let ten = BigInt::from(10);
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    let mut value = if scale >= 0 {
        BigRational::from_integer(all * pow)
    } else {
        BigRational::new(all, pow)
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

fn render_rational(value: &Exact) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    // Terminating decimal iff the reduced denominator has only factors 2 and 5.
    let mut d = value.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let places = twos.max(fives);
    let scaled = value * BigRational::from_integer(num_traits::pow(BigInt::from(10), places));
    let int = scaled.to_integer();
    let negative = int.is_negative();
    let digits = int.abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (whole, frac) = digits.split_at(digits.len() - places);
    format!("{}{}.{}", if negative { "-" } else { "" }, whole, frac)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parse_is_exact() {
        assert_eq!(Exact::parse("0.1").unwrap(), Exact::ratio(1, 10));
        assert_eq!(Exact::parse("-2.25").unwrap(), Exact::ratio(-9, 4));
        assert_eq!(Exact::parse("1e-3").unwrap(), Exact::ratio(1, 1000));
        assert_eq!(Exact::parse("2.5E2").unwrap(), Exact::from_int(250));
        assert_eq!(Exact::parse("1/3").unwrap(), Exact::ratio(1, 3));
        assert_eq!(Exact::parse(".5").unwrap(), Exact::ratio(1, 2));
        assert!(Exact::parse("abc").is_err());
        assert!(Exact::parse("1/0").is_err());
        assert!(Exact::parse("").is_err());
    }

    #[test]
    fn from_f64_uses_shortest_repr() {
        assert_eq!(Exact::from_f64(0.3).unwrap(), Exact::ratio(3, 10));
        assert!(Exact::from_f64(f64::INFINITY).is_err());
    }

    #[test]
    fn render_terminating_and_repeating() {
        assert_eq!(Exact::ratio(9, 4).render(), "2.25");
        assert_eq!(Exact::ratio(-1, 8).render(), "-0.125");
        assert_eq!(Exact::from_int(4).render(), "4");
        assert_eq!(Exact::ratio(1, 20).render(), "0.05");
        assert_eq!(Exact::ratio(1, 3).render(), "1/3");
        assert_eq!(Exact::ratio(-49, 6).render(), "-49/6");
    }

    #[test]
    fn exact_sqrt_only_for_squares() {
        assert_eq!(Exact::ratio(9, 16).sqrt(), Some(Exact::ratio(3, 4)));
        assert_eq!(Exact::ratio(1, 2).sqrt(), None);
        assert_eq!(4.0f64.sqrt(), 2.0);
    }

    #[test]
    fn float_comparisons_use_tolerance() {
        assert!(!gt(&(1.0 + 1e-12), &1.0));
        assert!(approx_eq(&(1.0 + 1e-12), &1.0));
        assert!(gt(&Exact::ratio(1, 1_000_000_000_000), &<Exact as Scalar>::zero()));
    }
}
