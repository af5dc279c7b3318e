//! Exact rationals used for reliabilities and interval endpoints.
//!
//! Values print as `"num/den"` (always with a denominator) and parse from
//! that form, from plain integers, or from finite decimals such as `0.75`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i128>;

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Validation(format!("not a rational number: `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all_digits = |p: &str| p.chars().all(|c| c.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) || frac_part.len() > 30 {
        return Err(bad());
    }
    let mut value = Rational::zero();
    if !int_part.is_empty() {
        value = Rational::from_integer(int_part.parse().map_err(|_| bad())?);
    }
    if !frac_part.is_empty() {
        let num: i128 = frac_part.parse().map_err(|_| bad())?;
        let den = 10i128.pow(frac_part.len() as u32);
        value += Rational::new(num, den);
    }
    Ok(if negative { -value } else { value })
}

/// True when `r` lies in the unit interval `(0, 1]`.
pub fn in_unit_interval(r: &Rational) -> bool {
    *r > Rational::zero() && *r <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_decimal_forms() {
        assert_eq!(parse_rational("0.75").unwrap(), Rational::new(3, 4));
        assert_eq!(parse_rational("1.0").unwrap(), Rational::from_integer(1));
        assert_eq!(parse_rational("1").unwrap(), Rational::from_integer(1));
        assert_eq!(parse_rational(".5").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("9/10").unwrap(), Rational::new(9, 10));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "0.5.5", "1e3", "."] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn always_prints_denominator() {
        assert_eq!(format_rational(&Rational::from_integer(1)), "1/1");
        assert_eq!(format_rational(&Rational::new(2, 4)), "1/2");
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(n in -10_000i128..10_000, d in 1i128..10_000) {
            let r = Rational::new(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
