//! Rational scalars and their text form.
//!
//! Scalars are `num_rational::BigRational`, which keeps values in lowest terms
//! with a positive denominator. Text form is `"p/q"` or `"p"`; both ASCII `-`
//! and U+2212 are accepted as the minus sign on input.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let cleaned: String = text.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("\u{2212}3/4").unwrap(), frac(-3, 4));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("0/5").unwrap(), int(0));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&frac(-6, 8)), "-3/4");
        assert_eq!(format_rational(&int(0)), "0");
        assert_eq!(format_rational(&frac(4, 2)), "2");
    }

    #[test]
    fn zero_is_canonical() {
        let z = frac(0, -7);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(rational_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rational_sqrt(&int(5)), None);
        assert_eq!(rational_sqrt(&int(-1)), None);
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
    }
}
