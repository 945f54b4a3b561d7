//! Exact rational scalars and their string form.
//!
//! Rationals are written as `"p/q"` or `"p"`; decimal literals such as
//! `"0.25"` and `"-1.5"` are also accepted on input and converted exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A point of ℝⁿ with rational coordinates.
pub type Point = Vec<Rational>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn point(coords: &[(i64, i64)]) -> Point {
    coords.iter().map(|&(n, d)| rat(n, d)).collect()
}

/// `2^-depth`
pub fn dyadic_step(depth: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << depth as usize)
}

/// `index / 2^depth`
pub fn dyadic(index: &BigInt, depth: u32) -> Rational {
    Rational::new(index.clone(), BigInt::one() << depth as usize)
}

/// Scale by `2^depth`.
pub fn scale_pow2(r: &Rational, depth: u32) -> Rational {
    r * Rational::from_integer(BigInt::one() << depth as usize)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let digits = |x: &str| x.chars().all(|c| c.is_ascii_digit());
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !digits(whole_digits) || !digits(frac) || (whole_digits.is_empty() && frac.is_empty()) {
            return Err(err());
        }
        let w: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| err())?
        };
        let f: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().map_err(|_| err())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::new(w * &scale + f, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Canonical `"p/q"` form; integers are written as `"p"`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn format_point(p: &[Rational]) -> Vec<String> {
    p.iter().map(format_rational).collect()
}

/// Smallest integer `>= r`.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Largest integer `<= r`.
pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Lossy conversion for diagnostics and timing output only.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_zero_denominator_and_garbage() {
        assert!(matches!(
            parse_rational("1/0"),
            Err(Error::InvalidRational(_))
        ));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("-.").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&rat(4, 8)), "1/2");
        assert_eq!(format_rational(&rat(-6, 3)), "-2");
    }

    #[test]
    fn dyadic_helpers() {
        assert_eq!(dyadic_step(3), rat(1, 8));
        assert_eq!(dyadic(&BigInt::from(3), 2), rat(3, 4));
        assert_eq!(ceil_int(&rat(-4, 3)), BigInt::from(-1));
        assert_eq!(floor_int(&rat(-4, 3)), BigInt::from(-2));
    }
}
