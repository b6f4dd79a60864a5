//! Exact rationals and their canonical text form.
//!
//! `BigRational` already keeps values reduced with a positive denominator,
//! so the only work here is a strict parser: `"3"`, `"-7/2"` are accepted,
//! while `"6/4"`, `"+1"`, `"1/1"`, `"-0"` and `"2/-3"` are rejected because
//! they are not the canonical spelling of any value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text: `num` when the denominator is 1, else `num/den`.
pub fn to_text(r: &Rat) -> String {
    r.to_string()
}

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    if s.starts_with('-') && digits == "0" {
        return None;
    }
    s.parse().ok()
}

/// Parses the canonical text form, rejecting every non-canonical spelling.
pub fn parse(s: &str) -> Result<Rat> {
    let bad = || input(format!("non-canonical rational {s:?}"));
    match s.split_once('/') {
        None => match parse_int(s, true) {
            Some(n) => Ok(Rat::from_integer(n)),
            None => bad(),
        },
        Some((n, d)) => {
            let (Some(n), Some(d)) = (parse_int(n, true), parse_int(d, false)) else {
                return bad();
            };
            if d <= BigInt::one() || n.is_zero() || !n.gcd(&d).is_one() {
                return bad();
            }
            Ok(Rat::new_raw(n, d))
        }
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Gcd of the numerators of integer-valued rationals (0 for an empty or all-zero input).
pub fn integer_content<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, r| acc.gcd(&r.numer().abs()))
}

pub fn pow(r: &Rat, e: usize) -> Rat {
    num_traits::pow(r.clone(), e)
}
