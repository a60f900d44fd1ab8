//! The coefficient-ring abstraction shared by series, matrices and the
//! Taylor/dual-number evaluators.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::Rational;

pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn pow_u(&self, e: u32) -> Self {
        num_traits::pow(self.clone(), e as usize)
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn from_rational(q: Rational) -> Self {
        MultiPoly::constant(q)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        MultiPoly::scale(self, q)
    }
    fn try_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        if Zero::is_zero(&c) {
            None
        } else {
            Some(MultiPoly::constant(c.recip()))
        }
    }
    fn pow_u(&self, e: u32) -> Self {
        self.pow(e)
    }
}
