//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which already keeps values in
//! lowest terms with a positive denominator. This module adds the small
//! constructors and the canonical `p/q` text form used by reports.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ExactError;

pub type Rational = num_rational::BigRational;

/// `n/d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn to_text(q: &Rational) -> String {
    q.to_string()
}

pub fn from_text(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| ExactError::Parse(s.to_string()))?;
    let d: BigInt = d.parse().map_err(|_| ExactError::Parse(s.to_string()))?;
    if d.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

/// `binom(k, j)` for any integer `k` and `j >= 0`, via the falling factorial.
pub fn binomial(k: i64, j: u32) -> Rational {
    let mut num = BigInt::one();
    for i in 0..j as i64 {
        num *= k - i;
    }
    Rational::new(num, factorial(j).to_integer())
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let q = rat(6, -4);
        assert_eq!(q, rat(-3, 2));
        assert_eq!(to_text(&q), "-3/2");
        assert_eq!(to_text(&rat(0, 5)), "0");
    }

    #[test]
    fn text_round_trip() {
        for (n, d) in [(1, 2), (-7, 3), (0, 1), (123456789, 1024)] {
            let q = rat(n, d);
            assert_eq!(from_text(&to_text(&q)).unwrap(), q);
        }
        assert!(from_text("1/0").is_err());
        assert!(from_text("x").is_err());
    }

    #[test]
    fn negative_binomials() {
        // (1+t)^{-1} = 1 - t + t^2 - ...
        assert_eq!(binomial(-1, 3), int(-1));
        assert_eq!(binomial(-2, 2), int(3));
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 3), int(0));
    }
}
