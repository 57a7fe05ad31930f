//! Exact rational scalars and their canonical text form.
//!
//! Every coefficient in the engine is an arbitrary-precision rational.
//! The text form is `p/q` with `q > 0` and `gcd(p, q) = 1`, or just `p`
//! when the denominator is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational scalar.
pub type Rat = BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p`. The denominator must be nonzero; the result is
/// reduced to lowest terms by construction.
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator `{text}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator `{text}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Rat::new(num, den))
}

/// Canonical text form: reduced, positive denominator, `/1` omitted.
pub fn format_rat(value: &Rat) -> String {
    let (mut num, mut den) = (value.numer().clone(), value.denom().clone());
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    if den.is_one() {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["0", "5", "-7", "5/3", "-2/9"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // not in lowest terms on input, canonical on output
        assert_eq!(format_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
