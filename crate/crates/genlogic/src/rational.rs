//! Exact rational numbers: parsing of `p/q` and decimal literals, and
//! deterministic decimal rendering (round half to even).

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use std::str::FromStr;

use thiserror::Error;

/// Alias used throughout the crate. All probabilities and μ values are
/// exact rationals; floats appear only in the oracle's numeric path.
pub type Rational = BigRational;

/// Default number of digits for decimal rendering.
pub const DEFAULT_DIGITS: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumberParseError {
    #[error("empty number literal")]
    Empty,
    #[error("invalid number literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `3/4`, `0.75`, `1`, `.5` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, NumberParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(NumberParseError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| NumberParseError::Invalid(text.to_string()))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| NumberParseError::Invalid(text.to_string()))?;
        if d.is_zero() {
            return Err(NumberParseError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| NumberParseError::Invalid(text.to_string()))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(NumberParseError::Invalid(text.to_string()));
        }
        let scale = BigInt::from(10u8).pow(frac.len() as u32);
        let frac_part = BigInt::from_str(frac)
            .map_err(|_| NumberParseError::Invalid(text.to_string()))?;
        let numer = int_part * &scale + BigInt::from(sign) * frac_part;
        return Ok(Rational::new(numer, scale));
    }
    let n = BigInt::from_str(s).map_err(|_| NumberParseError::Invalid(text.to_string()))?;
    Ok(Rational::from_integer(n))
}

/// Renders a rational as `numer/denom`, always with an explicit denominator
/// (`1` prints as `1/1`). This is the exact, lossless form.
pub fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders a rational in fixed-point decimal with the given number of
/// fraction digits, rounding half to even. Display-only: callers keep the
/// exact value.
pub fn decimal_string(r: &Rational, digits: usize) -> String {
    let negative = r.is_negative();
    let abs = r.abs();
    let scale = BigInt::from(10u8).pow(digits as u32);
    let scaled_num = abs.numer() * &scale;
    let den = abs.denom();
    let (mut q, rem) = num::Integer::div_rem(&scaled_num, den);
    let twice = &rem * BigInt::from(2u8);
    let round_up = match twice.cmp(den) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => num::Integer::is_odd(&q),
    };
    if round_up {
        q += BigInt::one();
    }
    let (int_part, frac_part) = num::Integer::div_rem(&q, &scale);
    let sign = if negative && !q.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}

/// Convenience: rational from an integer pair.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}
