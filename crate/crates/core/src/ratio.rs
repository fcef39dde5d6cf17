//! Exact rational helpers on top of [`num_rational::BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn ratio(num: usize, den: usize) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Smallest rational with denominator `10^9` that is `>= x`.
pub fn ceil_decimal(x: f64) -> Rational {
    let scaled = (x * 1e9).ceil();
    Rational::new(BigInt::from(scaled as i64), BigInt::from(1_000_000_000i64))
}

pub fn parse(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => Some(Rational::from_integer(s.trim().parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_formatting() {
        assert_eq!(to_string(&ratio(10, 25)), "2/5");
        assert_eq!(to_string(&ratio(4, 2)), "2");
        assert_eq!(parse("6/15"), Some(ratio(2, 5)));
        assert_eq!(parse("3"), Some(ratio(3, 1)));
        assert_eq!(parse("1/0"), None);
    }

    #[test]
    fn ceil_decimal_is_upper_bound() {
        let x = 0.4_f64;
        assert!(to_f64(&ceil_decimal(x)) >= x);
        assert!(ceil_decimal(x) <= ratio(400_000_001, 1_000_000_000));
    }
}
