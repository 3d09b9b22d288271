//! Exact rational quantities.
//!
//! Every quantity is held in lowest terms with a positive denominator, so
//! structural equality coincides with numeric equality.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantityError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed quantity literal `{0}`")]
    Malformed(String),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quantity(BigRational);

impl Quantity {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self, QuantityError> {
        let denominator = denominator.into();
        if denominator.is_zero() {
            return Err(QuantityError::ZeroDenominator);
        }
        Ok(Self(BigRational::new(numerator.into(), denominator)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, QuantityError> {
        if rhs.is_zero() {
            return Err(QuantityError::DivisionByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    /// True when the value lies in the closed unit interval.
    pub fn in_unit_interval(&self) -> bool {
        !self.is_negative() && self.0 <= BigRational::one()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact decimal expansion, if the denominator has no prime factors other
    /// than 2 and 5.
    pub fn to_exact_decimal(&self) -> Option<String> {
        let mut den = self.denom().clone();
        let mut twos = 0u32;
        let mut fives = 0u32;
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        while den.is_even() {
            den /= &two;
            twos += 1;
        }
        while (&den % &five).is_zero() {
            den /= &five;
            fives += 1;
        }
        if !den.is_one() {
            return None;
        }
        let places = twos.max(fives);
        let scaled = self.numer() * (BigInt::from(10).pow(places) / self.denom());
        Some(place_point(&scaled, places as usize))
    }

    /// Decimal rendering rounded to at most `digits` significant digits
    /// (half away from zero), with trailing zeros removed.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        assert!(digits > 0, "at least one significant digit");
        if self.is_zero() {
            return "0".to_owned();
        }
        let magnitude = self.0.abs();
        let ten = BigRational::from_integer(BigInt::from(10));
        // Find exponent e with 10^e <= |v| < 10^(e+1).
        let mut exponent: i64 = magnitude.numer().to_string().len() as i64
            - magnitude.denom().to_string().len() as i64;
        let pow10 = |e: i64| -> BigRational {
            if e >= 0 {
                ten.pow(e as i32)
            } else {
                BigRational::one() / ten.pow((-e) as i32)
            }
        };
        while pow10(exponent) > magnitude {
            exponent -= 1;
        }
        while pow10(exponent + 1) <= magnitude {
            exponent += 1;
        }
        let shift = digits as i64 - 1 - exponent;
        let scaled = &magnitude * pow10(shift);
        let mut rounded = round_half_up(&scaled);
        let mut shift = shift;
        if rounded == BigInt::from(10).pow(digits) {
            rounded /= 10;
            shift -= 1;
        }
        let mut text = if shift > 0 {
            place_point(&rounded, shift as usize)
        } else {
            (rounded * BigInt::from(10).pow((-shift) as u32)).to_string()
        };
        if self.is_negative() {
            text.insert(0, '-');
        }
        text
    }

    /// Parses an exact decimal literal (`12`, `-0.25`, `1.5e-3`) or a
    /// fraction (`1/3`).
    pub fn parse(text: &str) -> Result<Self, QuantityError> {
        let malformed = || QuantityError::Malformed(text.to_owned());
        let trimmed = text.trim();
        if let Some((num, den)) = trimmed.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| malformed())?;
            let den: BigInt = den.trim().parse().map_err(|_| malformed())?;
            return Self::new(num, den);
        }
        let (mantissa, exponent) = match trimmed.find(['e', 'E']) {
            Some(idx) => {
                let exp: i32 = trimmed[idx + 1..].parse().map_err(|_| malformed())?;
                (&trimmed[..idx], exp)
            }
            None => (trimmed, 0),
        };
        let (negative, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        let valid = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if (int_part.is_empty() && frac_part.is_empty()) || !valid(int_part) || !valid(frac_part) {
            return Err(malformed());
        }
        let all_digits = format!("{int_part}{frac_part}");
        let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().map_err(|_| malformed())?);
        let scale = exponent - frac_part.len() as i32;
        let ten = BigRational::from_integer(BigInt::from(10));
        if scale >= 0 {
            value *= ten.pow(scale);
        } else {
            value /= ten.pow(-scale);
        }
        Ok(Self(if negative { -value } else { value }))
    }
}

fn round_half_up(value: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let doubled = value.numer() * &two + value.denom();
    doubled.div_floor(&(value.denom() * two))
}

fn place_point(scaled: &BigInt, places: usize) -> String {
    let negative = scaled.sign() == Sign::Minus;
    let digits = scaled.magnitude().to_string();
    if places == 0 {
        return scaled.to_string();
    }
    let padded = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let frac_part = frac_part.trim_end_matches('0');
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(int_part);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_exact_decimal() {
            Some(decimal) => f.write_str(&decimal),
            None => write!(f, "{}/{}", self.numer(), self.denom()),
        }
    }
}

impl fmt::Debug for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quantity({self})")
    }
}

impl FromStr for Quantity {
    type Err = QuantityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl From<i64> for Quantity {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for Quantity {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl From<Quantity> for BigRational {
    fn from(q: Quantity) -> Self {
        q.0
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Quantity {
            type Output = Quantity;
            fn $method(self, rhs: Quantity) -> Quantity {
                Quantity((self.0).$method(rhs.0))
            }
        }

        impl<'a> $trait<&'a Quantity> for &'a Quantity {
            type Output = Quantity;
            fn $method(self, rhs: &'a Quantity) -> Quantity {
                Quantity((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the integer types; use `checked_div` otherwise.
forward_binop!(Div, div);

impl Neg for Quantity {
    type Output = Quantity;
    fn neg(self) -> Quantity {
        Quantity(-self.0)
    }
}

impl Sum for Quantity {
    fn sum<I: Iterator<Item = Quantity>>(iter: I) -> Quantity {
        iter.fold(Quantity::zero(), |acc, q| acc + q)
    }
}

impl<'a> Sum<&'a Quantity> for Quantity {
    fn sum<I: Iterator<Item = &'a Quantity>>(iter: I) -> Quantity {
        iter.fold(Quantity::zero(), |acc, q| &acc + q)
    }
}
