//! Exact rationals and their textual form.
//!
//! Values are written as `p/q` in lowest terms with the denominator elided
//! when it is one. Parsing accepts any fraction that reduces, plus plain
//! integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = || Error::ParseRational(text.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
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

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Smallest integer greater than or equal to `q`.
pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a rational vector to the primitive integer vector pointing the same
/// way. Returns the vector and the positive factor `k` with `v = k * prim`.
/// `None` for the zero vector.
pub fn primitive_direction(v: &[Rational]) -> Option<(Vec<BigInt>, Rational)> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let den = common_denominator(v);
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = scaled
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x))
        .abs();
    let prim: Vec<BigInt> = scaled.iter().map(|x| x / &g).collect();
    let factor = Rational::new(g, den);
    Some((prim, factor))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/2").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("-1/2").unwrap(), frac(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&frac(10, 4)), "5/2");
        assert_eq!(format_rational(&frac(8, 4)), "2");
        assert_eq!(format_rational(&frac(-3, 6)), "-1/2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn ceiling() {
        assert_eq!(ceil(&frac(5, 2)), BigInt::from(3));
        assert_eq!(ceil(&int(2)), BigInt::from(2));
        assert_eq!(ceil(&frac(-1, 2)), BigInt::from(0));
    }

    #[test]
    fn primitive_directions() {
        let (p, k) = primitive_direction(&[frac(2, 3), frac(-4, 3)]).unwrap();
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-2)]);
        assert_eq!(k, frac(2, 3));
        assert!(primitive_direction(&[int(0), int(0)]).is_none());
    }
}
