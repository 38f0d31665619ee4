//! Exact rational scalars.
//!
//! All arithmetic in this crate is over arbitrary-precision rationals; there
//! is no floating point anywhere in a computation path. `Rational` values are
//! always reduced with a positive denominator, so equality and zero-testing
//! are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with arbitrary-precision numerator and positive
/// denominator. Integer scalars have denominator 1.
pub type Rational = BigRational;

/// Integer scalar.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Fraction `num/den`. Panics if `den == 0`; intended for literals in tests
/// and examples.
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses an exact scalar: an integer (`-3`), a fraction (`p/q`), or a
/// decimal with optional exponent (`1.25`, `-2e3`). Decimals are converted
/// exactly, never rounded.
pub fn parse_exact(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::input("empty scalar"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad numerator in `{t}`")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad denominator in `{t}`")))?;
        if den.is_zero() {
            return Err(Error::Input(format!("zero denominator in `{t}`")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(t).ok_or_else(|| Error::Input(format!("unparseable scalar `{t}`")))
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (t, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let value: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let value = value * BigInt::from(sign);
    let net_exp = exp - frac_part.len() as i64;
    let pow10 = BigInt::from(10u8).pow(net_exp.unsigned_abs() as u32);
    Some(if net_exp >= 0 {
        Rational::from_integer(value * pow10)
    } else {
        Rational::new(value, pow10)
    })
}

/// Canonical exact string: integers as plain decimals, everything else as
/// `p/q`. Round-trips through [`parse_exact`].
pub fn format_exact(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True for entries in {0, +1, -1}.
pub fn is_zero_pm1(r: &Rational) -> bool {
    r.is_zero() || r.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_integer_and_fraction() {
        assert_eq!(parse_exact("7").unwrap(), rat(7));
        assert_eq!(parse_exact("-3").unwrap(), rat(-3));
        assert_eq!(parse_exact("+5").unwrap(), rat(5));
        assert_eq!(parse_exact("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_exact("-2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_exact("3/-6").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(parse_exact("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse_exact("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_exact("2e3").unwrap(), rat(2000));
        assert_eq!(parse_exact("1.5e-2").unwrap(), ratio(3, 200));
        assert_eq!(parse_exact(".5").unwrap(), ratio(1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "x", "1/0", "1//2", "1.2.3", "2e", "--3", "1 2"] {
            assert!(parse_exact(bad).is_err(), "accepted `{bad}`");
        }
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(format_exact(&rat(-12)), "-12");
        assert_eq!(format_exact(&ratio(2, 4)), "1/2");
        assert_eq!(format_exact(&ratio(-9, 6)), "-3/2");
    }

    proptest! {
        // Reduced form with positive denominator, and exact round-trip.
        #[test]
        fn roundtrip_and_invariants(num in -10_000i64..10_000, den in 1i64..500) {
            let r = ratio(num, den);
            prop_assert!(r.denom() > &num_bigint::BigInt::from(0));
            let back = parse_exact(&format_exact(&r)).unwrap();
            prop_assert_eq!(back, r);
        }
    }
}
