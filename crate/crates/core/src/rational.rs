//! Formatting and parsing helpers for exact rationals.
//!
//! Certificates and reports serialize every rational as the string
//! `"num/den"` in lowest terms, with `/den` omitted when the denominator
//! is 1, so JSON output never contains floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

/// Renders a rational in lowest terms as `num/den`, omitting `/den` when
/// the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the `num/den` format accepted by [`format_rational`].
pub fn parse_rational(s: &str) -> Result<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("invalid rational numerator in {s:?}")))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("invalid rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Config(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Rational from an integer pair, for tests and tables.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a single integer.
pub fn int(num: i64) -> Rational {
    Rational::from(BigInt::from(num))
}

/// Greatest common divisor of the reduced denominator of `r` with `n`.
pub fn denominator_gcd(r: &Rational, n: u64) -> BigInt {
    num_integer::gcd(r.denom().abs(), BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(format_rational(&int(-3)), "-3");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn formats_reduced_fractions() {
        assert_eq!(format_rational(&ratio(15, 4)), "15/4");
        assert_eq!(format_rational(&ratio(640, 3)), "640/3");
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&ratio(-27, 1)), "-27");
    }

    #[test]
    fn parse_round_trips() {
        for s in ["15/4", "-3773/4", "22295/4", "0", "640/3", "-27"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn denominator_gcd_uses_reduced_form() {
        assert_eq!(denominator_gcd(&ratio(15, 4), 4), BigInt::from(4));
        assert_eq!(denominator_gcd(&ratio(640, 3), 9), BigInt::from(3));
        assert_eq!(denominator_gcd(&ratio(6, 4), 4), BigInt::from(2));
        assert_eq!(denominator_gcd(&int(5), 4), BigInt::from(1));
    }
}
