//! Truncated power series in an auxiliary variable and first-order dual
//! numbers. Together they evaluate rational functions on Taylor series and
//! take exact partial derivatives without symbolic expansion.

use std::fmt;


use super::rational::Rational;
use super::ring::Ring;

/// `sum c[i] z^i`, known modulo `z^order` (or exactly when `order` is `None`).
#[derive(Clone, Debug, PartialEq)]
pub struct Taylor {
    c: Vec<Rational>,
    order: Option<usize>,
}

impl Taylor {
    pub fn exact(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Taylor { c, order: None }
    }

    pub fn truncated(mut c: Vec<Rational>, order: usize) -> Self {
        c.truncate(order);
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Taylor { c, order: Some(order) }
    }

    /// `a + z`.
    pub fn variable_at(a: Rational) -> Self {
        Taylor::exact(vec![a, Rational::from_integer(1.into())])
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    /// Coefficient of `z^i`; `None` when beyond the known order.
    pub fn coeff(&self, i: usize) -> Option<Rational> {
        if self.order.is_some_and(|n| i >= n) {
            return None;
        }
        Some(self.c.get(i).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn with_order(&self, n: usize) -> Self {
        let n = self.order.map_or(n, |o| o.min(n));
        Taylor::truncated(self.c.clone(), n)
    }

    /// Term-by-term antiderivative plus the constant `c0`.
    pub fn integrate(&self, c0: Rational) -> Self {
        let mut c = vec![c0];
        for (i, a) in self.c.iter().enumerate() {
            c.push(a / Rational::from_integer((i as i64 + 1).into()));
        }
        match self.order {
            Some(n) => Taylor::truncated(c, n + 1),
            None => Taylor::exact(c),
        }
    }

    fn min_order(a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }
}

impl fmt::Display for Taylor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().enumerate().map(|(i, c)| format!("{c}*z^{i}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })?;
        if let Some(n) = self.order {
            write!(f, " + O(z^{n})")?;
        }
        Ok(())
    }
}

impl Ring for Taylor {
    fn zero() -> Self {
        Taylor::exact(vec![])
    }
    fn one() -> Self {
        Taylor::exact(vec![Rational::from_integer(1.into())])
    }
    fn from_rational(q: Rational) -> Self {
        Taylor::exact(vec![q])
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).cloned().unwrap_or_else(Rational::zero);
                match o.c.get(i) {
                    Some(b) => a + b,
                    None => a,
                }
            })
            .collect();
        match Taylor::min_order(self.order, o.order) {
            Some(k) => Taylor::truncated(c, k),
            None => Taylor::exact(c),
        }
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        let order = Taylor::min_order(self.order, o.order);
        let cap = order.unwrap_or(usize::MAX);
        let n = (self.c.len() + o.c.len()).saturating_sub(1).min(cap);
        let mut c = vec![Rational::zero(); n];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                if i + j < n {
                    c[i + j] += a * b;
                }
            }
        }
        match order {
            Some(k) => Taylor::truncated(c, k),
            None => Taylor::exact(c),
        }
    }
    fn negate(&self) -> Self {
        Taylor { c: self.c.iter().map(|x| -x).collect(), order: self.order }
    }
    fn scale(&self, q: &Rational) -> Self {
        let c = self.c.iter().map(|x| x * q).collect();
        match self.order {
            Some(k) => Taylor::truncated(c, k),
            None => Taylor::exact(c),
        }
    }
    fn try_inverse(&self) -> Option<Self> {
        let a0 = self.c.first()?;
        let inv0 = a0.recip();
        let n = match self.order {
            Some(n) => n,
            None if self.c.len() == 1 => return Some(Taylor::exact(vec![inv0])),
            None => return None,
        };
        let mut y: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = if k == 0 { Rational::from_integer(1.into()) } else { Rational::zero() };
            for i in 1..=k {
                if let Some(a) = self.c.get(i) {
                    acc -= a * &y[k - i];
                }
            }
            y.push(acc * &inv0);
        }
        Some(Taylor::truncated(y, n))
    }
}

/// `v + sum d[i] eps_i` with `eps_i eps_j = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<F> {
    pub v: F,
    pub d: Vec<F>,
}

impl<F: Ring> Dual<F> {
    pub fn constant(v: F) -> Self {
        Dual { v, d: Vec::new() }
    }

    /// The `i`-th of `n` independent variables, with value `v`.
    pub fn variable(v: F, i: usize, n: usize) -> Self {
        let mut d = vec![F::zero(); n];
        d[i] = F::one();
        Dual { v, d }
    }

    pub fn deriv(&self, i: usize) -> F {
        self.d.get(i).cloned().unwrap_or_else(F::zero)
    }

    fn zip<G: Fn(Option<&F>, Option<&F>) -> F>(&self, o: &Self, g: G) -> Vec<F> {
        let n = self.d.len().max(o.d.len());
        (0..n).map(|i| g(self.d.get(i), o.d.get(i))).collect()
    }
}

impl<F: Ring> fmt::Display for Dual<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)?;
        for (i, d) in self.d.iter().enumerate() {
            write!(f, " + ({d})*eps{i}")?;
        }
        Ok(())
    }
}

impl<F: Ring> Ring for Dual<F> {
    fn zero() -> Self {
        Dual::constant(F::zero())
    }
    fn one() -> Self {
        Dual::constant(F::one())
    }
    fn from_rational(q: Rational) -> Self {
        Dual::constant(F::from_rational(q))
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.d.iter().all(|x| x.is_zero())
    }
    fn plus(&self, o: &Self) -> Self {
        let d = self.zip(o, |a, b| match (a, b) {
            (Some(a), Some(b)) => a.plus(b),
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (None, None) => F::zero(),
        });
        Dual { v: self.v.plus(&o.v), d }
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        let d = self.zip(o, |a, b| {
            let x = a.map(|a| a.times(&o.v));
            let y = b.map(|b| self.v.times(b));
            match (x, y) {
                (Some(x), Some(y)) => x.plus(&y),
                (Some(x), None) | (None, Some(x)) => x,
                (None, None) => F::zero(),
            }
        });
        Dual { v: self.v.times(&o.v), d }
    }
    fn negate(&self) -> Self {
        Dual { v: self.v.negate(), d: self.d.iter().map(|x| x.negate()).collect() }
    }
    fn scale(&self, q: &Rational) -> Self {
        Dual { v: self.v.scale(q), d: self.d.iter().map(|x| x.scale(q)).collect() }
    }
    fn try_inverse(&self) -> Option<Self> {
        let inv = self.v.try_inverse()?;
        let inv2 = inv.times(&inv).negate();
        Some(Dual { v: inv, d: self.d.iter().map(|x| x.times(&inv2)).collect() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn taylor_inverse() {
        // 1/(1 - z) = 1 + z + z^2 + ...
        let a = Taylor::truncated(vec![int(1), int(-1)], 5);
        let inv = a.try_inverse().unwrap();
        for i in 0..5 {
            assert_eq!(inv.coeff(i).unwrap(), int(1));
        }
        assert!(inv.coeff(5).is_none());
        assert!(Taylor::variable_at(int(1)).try_inverse().is_none());
    }

    #[test]
    fn dual_derivatives() {
        // f(x, y) = x^2 y / (x + y) at (1, 2)
        let x = Dual::variable(int(1), 0, 2);
        let y = Dual::variable(int(2), 1, 2);
        let f = x.times(&x).times(&y).times(&x.plus(&y).try_inverse().unwrap());
        assert_eq!(f.v, rat(2, 3));
        // df/dx = (2xy(x+y) - x^2 y)/(x+y)^2 = (12 - 2)/9
        assert_eq!(f.deriv(0), rat(10, 9));
        // df/dy = x^2 (x+y - y)/(x+y)^2 = 1/9
        assert_eq!(f.deriv(1), rat(1, 9));
    }
}
