//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`, which already keeps every value
//! in lowest terms with a positive denominator. This module adds the string
//! form used by the JSON documents (`"p/q"` or `"p"`) and a bit-size measure
//! for pivot selection.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`. Rejects zero denominators, blanks and embedded
/// whitespace.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    if text.is_empty() {
        return Err("empty rational".into());
    }
    if text.chars().any(char::is_whitespace) {
        return Err(format!("whitespace in rational {text:?}"));
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator in {text:?}"))?;
    let den: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| format!("bad denominator in {text:?}"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(Rational::new(num, den))
}

/// Inverse of [`parse_rational`]: `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Combined bit length of numerator and denominator.
pub fn bit_size(r: &Rational) -> u64 {
    r.numer().bits() + r.denom().bits()
}
