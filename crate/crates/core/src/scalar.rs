//! Exact rational scalars and their canonical text form.
//!
//! Every value crossing a file or process boundary is written as an integer
//! string (`"-3"`) or a reduced fraction with positive denominator
//! (`"-5/24"`). Parsing is strict about that form so that round trips are
//! byte-exact.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// The exact value domain used throughout the crate.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("`{0}` is not an integer or p/q literal")]
    Syntax(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
    #[error("`{0}` must have a positive denominator")]
    NegativeDenominator(String),
    #[error("`{0}` is not in lowest terms")]
    NotReduced(String),
}

fn parse_int(text: &str, whole: &str) -> Result<BigInt, ParseRationalError> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Syntax(whole.to_string()));
    }
    BigInt::from_str(text).map_err(|_| ParseRationalError::Syntax(whole.to_string()))
}

/// Parses `"n"` or `"p/q"`; the fraction must already be in lowest terms.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text, text)?)),
        Some((num, den)) => {
            let num = parse_int(num, text)?;
            let den = parse_int(den, text)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(text.to_string()));
            }
            if den.is_negative() {
                return Err(ParseRationalError::NegativeDenominator(text.to_string()));
            }
            if !num.gcd(&den).is_one() || den.is_one() {
                return Err(ParseRationalError::NotReduced(text.to_string()));
            }
            Ok(Rational::new_raw(num, den))
        }
    }
}

/// Canonical text: `"0"`, `"7"`, `"-5/24"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// `0!, 1!, ..., n!` as exact integers.
pub fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for k in 1..=n {
        let next = &out[k - 1] * BigInt::from(k);
        out.push(next);
    }
    out
}

/// Rows `0..=n` of Pascal's triangle.
pub fn binomial_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}
