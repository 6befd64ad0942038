//! Exact rational citation values and their text forms.
//!
//! Values are reduced `i64` ratios. Text forms accepted: integers (`3`),
//! decimals with optional exponent (`0.5`, `.5`, `2e-1`), and fractions
//! (`1/2`). Formatting prefers a finite decimal when the denominator allows
//! one and falls back to `numer/denom` otherwise, so formatting then parsing
//! is always the identity.

use crate::{Error, Result};
use alloc::string::{String, ToString};
use num_rational::Ratio;

pub type Rational = Ratio<i64>;

/// Shorthand constructor, mostly for tests and tables.
///
/// Panics if `denom` is zero, like `Ratio::new`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Ratio::new(numer, denom)
}

/// True when `value` is an integer multiple of `grid` (`grid` nonzero).
pub fn on_grid(value: Rational, grid: Rational) -> bool {
    (value / grid).is_integer()
}

/// Lossy conversion for score arithmetic. Exact for desk-scale inputs.
pub fn to_f64(value: Rational) -> f64 {
    *value.numer() as f64 / *value.denom() as f64
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = || Error::ParseRational(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((numer, denom)) = s.split_once('/') {
        let numer: i64 = numer.trim().parse().map_err(|_| err())?;
        let denom: i64 = denom.trim().parse().map_err(|_| err())?;
        if denom == 0 {
            return Err(err());
        }
        return Ok(Ratio::new(numer, denom));
    }
    parse_decimal(s).ok_or_else(err)
}

/// `[-]digits[.digits][e[±]digits]`, at least one mantissa digit.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let e = e.strip_prefix('+').unwrap_or(e);
            (m, e.parse::<i32>().ok()?)
        }
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let mut numer: i64 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer.checked_mul(10)?.checked_add((b - b'0') as i64)?;
    }
    if negative {
        numer = -numer;
    }
    let mut value = Ratio::new(numer, pow10(frac_part.len() as i32)?);
    if exponent > 0 {
        value *= Ratio::from_integer(pow10(exponent)?);
    } else if exponent < 0 {
        value /= Ratio::from_integer(pow10(-exponent)?);
    }
    Some(value)
}

fn pow10(k: i32) -> Option<i64> {
    10i64.checked_pow(u32::try_from(k).ok()?)
}

pub fn format_rational(value: Rational) -> String {
    let numer = *value.numer();
    let denom = *value.denom();
    if denom == 1 {
        return numer.to_string();
    }
    // A finite decimal exists iff the reduced denominator is 2^a * 5^b.
    let (mut rest, mut twos, mut fives) = (denom, 0u32, 0u32);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return alloc::format!("{numer}/{denom}");
    }
    let places = twos.max(fives);
    let scale = 10i128.pow(places) / denom as i128;
    let digits = (numer.unsigned_abs() as i128 * scale).to_string();
    let digits = alloc::format!("{digits:0>width$}", width = places as usize + 1);
    let split = digits.len() - places as usize;
    let sign = if numer < 0 { "-" } else { "" };
    alloc::format!("{sign}{}.{}", &digits[..split], &digits[split..])
}
