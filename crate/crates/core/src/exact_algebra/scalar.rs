//! Exact rational scalars and their textual forms.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type ExactScalar = BigRational;

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> ExactScalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` with `q > 0`, an integer `"p"`, or a finite decimal such as
/// `"-1.25"` (converted exactly to `-5/4`).
pub fn parse_rational(text: &str) -> Result<ExactScalar> {
    let err = || Error::Parse(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num).ok_or_else(err)?;
        let den = parse_digits(den).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    let whole = if whole.is_empty() { BigInt::zero() } else { parse_digits(whole).ok_or_else(err)? };
    let mut value = BigRational::from_integer(whole);
    if body.contains('.') && !frac.is_empty() {
        let digits = parse_digits(frac).ok_or_else(err)?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        value += BigRational::new(digits, scale);
    }
    Ok(if negative { -value } else { value })
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::parse_bytes(s.as_bytes(), 10)
}

fn parse_int(s: &str) -> Option<BigInt> {
    match s.as_bytes().first()? {
        b'-' => parse_digits(&s[1..]).map(|v| -v),
        b'+' => parse_digits(&s[1..]),
        _ => parse_digits(s),
    }
}

/// Canonical text: `"p/q"` in lowest terms, or `"p"` when the value is an
/// integer.
pub fn canonical_string(q: &ExactScalar) -> String {
    q.to_string()
}

/// Decimal rendering rounded half away from zero to `digits` fractional
/// digits.
pub fn decimal_string(q: &ExactScalar, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + ratio(1, 2)).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    let frac = frac.to_str_radix(10);
    format!("{sign}{whole}.{}{frac}", "0".repeat(digits - frac.len()))
}

/// `10^(-digits)` as an exact rational.
pub fn ten_pow_neg(digits: u32) -> ExactScalar {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize))
}

pub fn sign(q: &ExactScalar) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Least common multiple of the denominators of `values` (1 when empty).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a ExactScalar>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
