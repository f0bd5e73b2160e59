//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"-3/7"`, `"12"` or `"+5"`. Whitespace around the value is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let offset = text.len() - text.trim_start().len();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num_int: BigInt =
        parse_int(num).ok_or_else(|| Error::parse(offset, format!("invalid integer {num:?}")))?;
    let den_int: BigInt = match den {
        Some(d) => {
            let pos = offset + num.len() + 1;
            let v = parse_unsigned(d)
                .ok_or_else(|| Error::parse(pos, format!("invalid denominator {d:?}")))?;
            if v.is_zero() {
                return Err(Error::parse(pos, "zero denominator"));
            }
            v
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(num_int, den_int))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let (neg, digits) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let v = parse_unsigned(digits)?;
    Some(if neg { -v } else { v })
}

fn parse_unsigned(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational(" -3/7 ").unwrap(), frac(-3, 7));
        assert_eq!(parse_rational("+5").unwrap(), int(5));
        assert_eq!(parse_rational("0/9").unwrap(), zero());
    }

    #[test]
    fn rejects_garbage_with_position() {
        assert!(matches!(
            parse_rational("1/0"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_rational("x"),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(parse_rational("3/-4").is_err());
        assert!(parse_rational("").is_err());
    }
}
