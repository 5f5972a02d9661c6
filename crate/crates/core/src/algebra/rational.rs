//! Arbitrary-precision rationals.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. This module adds the few helpers
//! the rest of the crate needs: literal construction, exact decimal parsing
//! and directed decimal rounding for printing enclosures.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` in lowest terms. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses a decimal literal such as `1e-10`, `-0.25` or `3.5E2` exactly.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let err = || Error::InvalidDecimal(s.to_string());
    let trimmed = s.trim();
    let (mantissa, exponent) = match trimmed.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = trimmed[pos + 1..].parse().map_err(|_| err())?;
            (&trimmed[..pos], exp)
        }
        None => (trimmed, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    if exponent.abs() > 10_000 {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().map_err(|_| err())?
    };
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Decimal string of `x` with `digits` fractional digits, rounded toward
/// negative infinity (`round_up == false`) or positive infinity.
pub fn to_decimal_directed(x: &Rational, digits: usize, round_up: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x * Rational::from_integer(scale.clone());
    let q = if round_up { scaled.ceil() } else { scaled.floor() };
    let q = q.to_integer();
    let negative = q.is_negative();
    let (int_part, frac_part) = q.abs().div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
}

/// Number of fractional decimal digits needed to resolve `precision`.
pub fn digits_for(precision: &Rational) -> usize {
    if !precision.is_positive() {
        return 17;
    }
    let mut digits = 0usize;
    let mut scaled = precision.clone();
    let ten = int(10);
    while scaled < Rational::one() && digits < 200 {
        scaled *= &ten;
        digits += 1;
    }
    digits + 2
}
