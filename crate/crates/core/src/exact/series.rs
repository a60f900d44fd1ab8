//! Truncated Laurent/Puiseux series in the spectral variable `lambda`.
//!
//! Exponents are stored doubled (`k2 = 2 * exponent`) so half-integer
//! exponents are exact integers. A series carries a watermark `floor`: every
//! coefficient with `k2 >= floor` is exact, anything below is unknown and
//! reading it is an error. `floor == None` means the series is exact
//! (a Laurent polynomial).

use std::collections::BTreeMap;
use std::fmt;

use super::rational::Rational;
use super::ring::Ring;
use super::ExactError;

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSeries<R> {
    half_step: bool,
    coeffs: BTreeMap<i64, R>,
    floor: Option<i64>,
}

fn max_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.max(y)),
    }
}

/// Render a doubled exponent as text: `3/2`, `-1`, `0`.
pub fn exp_text(k2: i64) -> String {
    if k2 % 2 == 0 {
        format!("{}", k2 / 2)
    } else {
        format!("{k2}/2")
    }
}

impl<R: Ring> LambdaSeries<R> {
    pub fn zero() -> Self {
        LambdaSeries { half_step: false, coeffs: BTreeMap::new(), floor: None }
    }

    pub fn constant(c: R) -> Self {
        Self::monomial2(c, 0)
    }

    /// `c * lambda^(k2/2)`.
    pub fn monomial2(c: R, k2: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k2, c);
        }
        LambdaSeries { half_step: k2 % 2 != 0, coeffs, floor: None }
    }

    pub fn monomial(c: R, e: i64) -> Self {
        Self::monomial2(c, 2 * e)
    }

    pub fn lambda() -> Self {
        Self::monomial(R::one(), 1)
    }

    /// Polynomial with `coeffs[i]` the coefficient of `lambda^i`.
    pub fn from_poly(coeffs: Vec<R>) -> Self {
        let mut s = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                s.coeffs.insert(2 * i as i64, c);
            }
        }
        s
    }

    /// Build from `(k2, coefficient)` pairs and a watermark.
    pub fn from_map2(half_step: bool, map: BTreeMap<i64, R>, floor: Option<i64>) -> Self {
        let mut coeffs: BTreeMap<i64, R> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if let Some(f) = floor {
            coeffs.retain(|&k, _| k >= f);
        }
        let half_step = half_step || coeffs.keys().any(|k| k % 2 != 0);
        LambdaSeries { half_step, coeffs, floor }
    }

    pub fn is_half_step(&self) -> bool {
        self.half_step
    }

    pub fn floor2(&self) -> Option<i64> {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored terms, `(k2, coefficient)`, ascending.
    pub fn terms2(&self) -> impl DoubleEndedIterator<Item = (i64, &R)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// Highest stored doubled exponent.
    pub fn top2(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn lead(&self) -> Option<(i64, &R)> {
        self.coeffs.iter().next_back().map(|(k, c)| (*k, c))
    }

    /// Coefficient of `lambda^(k2/2)`; errors below the watermark.
    pub fn coeff2(&self, k2: i64) -> Result<R, ExactError> {
        if let Some(f) = self.floor {
            if k2 < f {
                return Err(ExactError::BelowWatermark { exp: exp_text(k2), floor: exp_text(f) });
            }
        }
        Ok(self.coeffs.get(&k2).cloned().unwrap_or_else(R::zero))
    }

    pub fn coeff(&self, e: i64) -> Result<R, ExactError> {
        self.coeff2(2 * e)
    }

    /// Discard everything below `k2`, lowering the guarantee accordingly.
    pub fn truncate2(&self, k2: i64) -> Self {
        let floor = max_floor(self.floor, Some(k2));
        Self::from_map2(
            self.half_step,
            self.coeffs.range(k2..).map(|(k, c)| (*k, c.clone())).collect(),
            floor,
        )
    }

    /// `[.]_+`: the part with non-negative exponents, as an exact series.
    pub fn plus_part(&self) -> Result<Self, ExactError> {
        if let Some(f) = self.floor {
            if f > 0 {
                return Err(ExactError::BelowWatermark { exp: "0".into(), floor: exp_text(f) });
            }
        }
        Ok(Self::from_map2(
            false,
            self.coeffs.range(0..).map(|(k, c)| (*k, c.clone())).collect(),
            None,
        ))
    }

    /// Dense coefficient vector of an exact polynomial, index = degree.
    pub fn poly_coeffs(&self) -> Result<Vec<R>, ExactError> {
        if self.floor.is_some_and(|f| f > 0) || self.coeffs.keys().any(|&k| k < 0 || k % 2 != 0) {
            return Err(ExactError::NotPolynomial(self.to_string()));
        }
        let deg = self.top2().map(|k| k / 2).unwrap_or(-1);
        Ok((0..=deg).map(|e| self.coeffs.get(&(2 * e)).cloned().unwrap_or_else(R::zero)).collect())
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> LambdaSeries<S> {
        LambdaSeries::from_map2(self.half_step, self.coeffs.iter().map(|(k, c)| (*k, f(c))).collect(), self.floor)
    }

    pub fn try_map<S: Ring, E, F: Fn(&R) -> Result<S, E>>(&self, f: F) -> Result<LambdaSeries<S>, E> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.coeffs {
            out.insert(*k, f(c)?);
        }
        Ok(LambdaSeries::from_map2(self.half_step, out, self.floor))
    }

    pub fn add(&self, o: &Self) -> Self {
        let floor = max_floor(self.floor, o.floor);
        let mut map = self.coeffs.clone();
        for (k, c) in &o.coeffs {
            let v = match map.remove(k) {
                Some(a) => a.plus(c),
                None => c.clone(),
            };
            map.insert(*k, v);
        }
        Self::from_map2(self.half_step || o.half_step, map, floor)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negate())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn mul_coeff(&self, r: &R) -> Self {
        self.map(|c| c.times(r))
    }

    /// Multiply by `lambda^(k2/2)`.
    pub fn shift2(&self, k2: i64) -> Self {
        Self::from_map2(
            self.half_step || k2 % 2 != 0,
            self.coeffs.iter().map(|(k, c)| (k + k2, c.clone())).collect(),
            self.floor.map(|f| f + k2),
        )
    }

    pub fn shift(&self, e: i64) -> Self {
        self.shift2(2 * e)
    }

    /// Upper bound for the doubled exponents that may be nonzero.
    fn reach(&self) -> Option<i64> {
        self.top2().or(self.floor)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if (self.is_zero() && self.is_exact()) || (o.is_zero() && o.is_exact()) {
            return Self::zero();
        }
        let f1 = self.floor.and_then(|wa| o.reach().map(|t| wa + t));
        let f2 = o.floor.and_then(|wb| self.reach().map(|t| wb + t));
        let floor = max_floor(f1, f2);
        let mut map: BTreeMap<i64, R> = BTreeMap::new();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &o.coeffs {
                let k = ka + kb;
                if floor.is_some_and(|f| k < f) {
                    continue;
                }
                let p = ca.times(cb);
                let v = match map.remove(&k) {
                    Some(a) => a.plus(&p),
                    None => p,
                };
                map.insert(k, v);
            }
        }
        Self::from_map2(self.half_step || o.half_step, map, floor)
    }

    /// Product truncated below `k2`.
    pub fn mul_trunc2(&self, o: &Self, k2: i64) -> Self {
        self.truncate2(k2 - o.reach().unwrap_or(0).max(0))
            .mul(&o.truncate2(k2 - self.reach().unwrap_or(0).max(0)))
            .truncate2(k2)
    }

    pub fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::constant(R::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `1/self`, computed down to doubled exponent `depth2` (or less, if
    /// the input's watermark does not allow it).
    pub fn inverse(&self, depth2: i64) -> Result<Self, ExactError> {
        let (d, c) = self.lead().ok_or(ExactError::NonInvertible)?;
        let cinv = c.try_inverse().ok_or(ExactError::NonInvertible)?;
        let floor = match self.floor {
            Some(wb) => depth2.max(wb - 2 * d),
            None => depth2,
        };
        let step = if self.half_step { 1 } else { 2 };
        let mut y: BTreeMap<i64, R> = BTreeMap::new();
        let mut j = 0;
        while -d - j >= floor {
            let mut acc = if j == 0 { R::one() } else { R::zero() };
            let mut i = step;
            while i <= j {
                if let (Some(b), Some(yy)) = (self.coeffs.get(&(d - i)), y.get(&(-d - j + i))) {
                    acc = acc.minus(&b.times(yy));
                }
                i += step;
            }
            let v = acc.times(&cinv);
            if !v.is_zero() {
                y.insert(-d - j, v);
            }
            j += step;
        }
        Ok(Self::from_map2(self.half_step, y, Some(floor)))
    }

    pub fn div(&self, o: &Self, depth2: i64) -> Result<Self, ExactError> {
        let top = self.reach().unwrap_or(0);
        let inv = o.inverse(depth2 - top)?;
        Ok(self.mul(&inv).truncate2(depth2))
    }

    /// Square root with leading coefficient `+1`, down to `depth2`.
    pub fn sqrt(&self, depth2: i64) -> Result<Self, ExactError> {
        let (k, c) = self.lead().ok_or_else(|| ExactError::NotMonic("zero series".into()))?;
        if *c != R::one() {
            return Err(ExactError::NotMonic(format!("leading coefficient {c}")));
        }
        if k % 2 != 0 {
            return Err(ExactError::NotMonic(format!("leading exponent {}", exp_text(k))));
        }
        let l = k / 2;
        let half_step = self.half_step || l % 2 != 0;
        let step = if half_step { 1 } else { 2 };
        let floor = match self.floor {
            Some(wa) => depth2.max(wa - l),
            None => depth2,
        };
        let two_inv = R::from_rational(Rational::new(1.into(), 2.into()));
        let mut y: BTreeMap<i64, R> = BTreeMap::new();
        y.insert(l, R::one());
        let mut j = step;
        while l - j >= floor {
            let mut acc = self.coeffs.get(&(k - j)).cloned().unwrap_or_else(R::zero);
            let mut i = step;
            while i < j {
                if let (Some(a), Some(b)) = (y.get(&(l - i)), y.get(&(l - j + i))) {
                    acc = acc.minus(&a.times(b));
                }
                i += step;
            }
            let v = acc.times(&two_inv);
            if !v.is_zero() {
                y.insert(l - j, v);
            }
            j += step;
        }
        Ok(Self::from_map2(half_step, y, Some(floor)))
    }

    /// `Res_{lambda -> infinity}`: minus the coefficient of `lambda^{-1}`.
    pub fn residue(&self) -> Result<R, ExactError> {
        Ok(self.coeff2(-2)?.negate())
    }

    /// `d/dlambda`.
    pub fn deriv_lambda(&self) -> Self {
        let map = self
            .coeffs
            .iter()
            .map(|(k, c)| (k - 2, c.scale(&Rational::new((*k).into(), 2.into()))))
            .collect();
        Self::from_map2(self.half_step, map, self.floor.map(|f| f - 2))
    }
}

impl<R: Ring> fmt::Display for LambdaSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match *k {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*lambda^({})", exp_text(*k))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(w) = self.floor {
            write!(f, " + O(lambda^({}))", exp_text(w - 1))?;
        }
        Ok(())
    }
}

impl<R: Ring> Ring for LambdaSeries<R> {
    fn zero() -> Self {
        LambdaSeries::zero()
    }
    fn one() -> Self {
        LambdaSeries::constant(R::one())
    }
    fn from_rational(q: Rational) -> Self {
        LambdaSeries::constant(R::from_rational(q))
    }
    fn is_zero(&self) -> bool {
        LambdaSeries::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scale(&self, q: &Rational) -> Self {
        LambdaSeries::scale(self, q)
    }
    fn try_inverse(&self) -> Option<Self> {
        match self.lead() {
            Some((0, c)) if self.coeffs.len() == 1 && self.is_exact() => {
                c.try_inverse().map(LambdaSeries::constant)
            }
            _ => None,
        }
    }
}
