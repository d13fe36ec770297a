//! Exact rational lengths and ratios.
//!
//! All metric data (edge lengths, translation lengths, stretch ratios) is kept
//! as arbitrary-precision rationals; floating point appears only at the
//! reporting boundary (`to_decimal_string`, logarithms in the CLI).

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// A stretch ratio: finite rational or `+inf` (the `positive/0` convention).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }

    /// `num/den` with the conventions 0/0 = 0 and positive/0 = +inf.
    pub fn ratio(num: &Rational, den: &Rational) -> Self {
        if den.is_zero() {
            if num.is_zero() {
                ExtRational::zero()
            } else {
                ExtRational::Infinity
            }
        } else {
            ExtRational::Finite(num / den)
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::Finite(q) => rational_to_f64(q),
            ExtRational::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{q}"),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct RationalParseError {
    pub literal: String,
    pub reason: String,
}

fn parse_err(literal: &str, reason: &str) -> RationalParseError {
    RationalParseError {
        literal: literal.to_owned(),
        reason: reason.to_owned(),
    }
}

/// Parses `"p/q"`, integer, or decimal literals exactly (`"0.1"` is 1/10,
/// never a float approximation).
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err(s, "empty string"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| parse_err(s, "numerator is not an integer"))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| parse_err(s, "denominator is not an integer"))?;
        if den.is_zero() {
            return Err(parse_err(s, "zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let sign = if int_part.trim_start().starts_with('-') {
            -1
        } else {
            1
        };
        let int_part: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part
                .parse()
                .map_err(|_| parse_err(s, "integer part is not an integer"))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(s, "fractional part is not a digit string"));
        }
        let frac: BigInt = frac_part
            .parse()
            .map_err(|_| parse_err(s, "fractional part is not an integer"))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let numer = int_part * &scale + BigInt::from(sign) * frac;
        return Ok(Rational::new(numer, scale));
    }
    let int: BigInt = s.parse().map_err(|_| parse_err(s, "not an integer"))?;
    Ok(Rational::from_integer(int))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fall back for magnitudes outside f64 integer range.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Renders a rational with 12 significant decimal digits.
pub fn to_decimal_string(q: &Rational) -> String {
    if q.is_zero() {
        return "0".to_owned();
    }
    let v = rational_to_f64(q);
    let formatted = format!("{:.*e}", 11, v);
    // Re-render "d.dddddddddddem" without the exponent when it is small.
    let f: f64 = formatted.parse().unwrap_or(v);
    let mag = f.abs().log10().floor() as i32;
    if (-4..12).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        let s = format!("{:.*}", decimals, f);
        trim_trailing_zeros(&s)
    } else {
        formatted
    }
}

fn trim_trailing_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_owned();
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_owned()
}

pub fn rational_from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
