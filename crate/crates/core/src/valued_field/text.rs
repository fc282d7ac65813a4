use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `num` or `num/den`, with `den` nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLiteral {
    pub num: BigInt,
    pub den: BigInt,
}

pub fn parse_rational_literal(text: &str) -> Result<RationalLiteral> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (parse_int(n)?, parse_int(d)?),
        None => (parse_int(&s)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(RationalLiteral { num, den })
}

pub(crate) fn parse_int(s: &str) -> Result<BigInt> {
    let s = s.strip_prefix('+').unwrap_or(s);
    BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

pub(crate) fn parse_i64(s: &str) -> Result<i64> {
    s.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent {s:?}")))
}

/// The explicit digit form `u*X^v+O(X^N)` where `X` is the uniformizer letter.
#[derive(Debug)]
pub(crate) struct DigitForm {
    pub unit: String,
    pub val: i64,
    pub abs: i64,
}

/// Returns `Ok(None)` when `text` is not in digit form at all.
pub(crate) fn parse_digit_form(text: &str, letter: char) -> Result<Option<DigitForm>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let big_o = format!("+O({letter}^");
    let Some(pos) = s.find(&big_o) else {
        return Ok(None);
    };
    let (head, tail) = s.split_at(pos);
    let tail = &tail[big_o.len()..];
    let abs_text = tail
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("missing ')' in {text:?}")))?;
    let abs = parse_i64(abs_text)?;
    let marker = format!("*{letter}^");
    let (unit, val) = match head.rfind(&marker) {
        Some(mpos) => (head[..mpos].to_string(), parse_i64(&head[mpos + marker.len()..])?),
        None => return Err(Error::Parse(format!("missing '{marker}' in {text:?}"))),
    };
    Ok(Some(DigitForm { unit, val, abs }))
}

pub(crate) fn format_digit_form(unit: &str, letter: char, val: i64, abs: i64) -> String {
    format!("{unit}*{letter}^{val}+O({letter}^{abs})")
}
