//! Sparse multivariate polynomials over `Rational` in tagged atoms.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::atom::{Atom, Family};
use super::rational::Rational;
use super::ExactError;

/// A power product of atoms, sorted by atom with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Atom, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        Monomial(vec![(a, 1)])
    }

    pub fn power(a: Atom, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(a, e)])
        }
    }

    pub fn from_factors(mut f: Vec<(Atom, u32)>) -> Self {
        f.retain(|&(_, e)| e > 0);
        f.sort_by_key(|&(a, _)| a);
        let mut out: Vec<(Atom, u32)> = Vec::with_capacity(f.len());
        for (a, e) in f {
            match out.last_mut() {
                Some((b, d)) if *b == a => *d += e,
                _ => out.push((a, e)),
            }
        }
        Monomial(out)
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_of(&self, a: Atom) -> u32 {
        self.0
            .binary_search_by_key(&a, |&(b, _)| b)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lower the exponent of `a` by `by`; `None` if it would go negative.
    pub fn reduce(&self, a: Atom, by: u32) -> Option<Monomial> {
        let mut f = self.0.clone();
        let i = f.binary_search_by_key(&a, |&(b, _)| b).ok()?;
        if f[i].1 < by {
            return None;
        }
        f[i].1 -= by;
        if f[i].1 == 0 {
            f.remove(i);
        }
        Some(Monomial(f))
    }

    pub fn without(&self, a: Atom) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(b, _)| b != a).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (a, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(Rational::from_integer(n.into()))
    }

    pub fn atom(a: Atom) -> Self {
        MultiPoly::term(Rational::one(), Monomial::atom(a))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(a, _)| a))
            .collect()
    }

    pub fn families(&self) -> (bool, bool) {
        let mut jet = false;
        let mut oper = false;
        for a in self.atoms() {
            match a.family() {
                Family::Jet => jet = true,
                Family::Oper => oper = true,
                Family::Neutral => {}
            }
        }
        (jet, oper)
    }

    /// Errors when jet atoms and oper atoms would be mixed.
    pub fn check_tags(&self, other: &MultiPoly) -> Result<(), ExactError> {
        let (j1, o1) = self.families();
        let (j2, o2) = other.families();
        if (j1 || j2) && (o1 || o2) {
            return Err(ExactError::RingTag(format!("{self} with {other}")));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check_tags(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check_tags(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, mono: &Monomial) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.mul(mono), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn degree_in(&self, a: Atom) -> u32 {
        self.terms.keys().map(|m| m.degree_of(a)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Highest `k` with `u^{(k)}` present.
    pub fn max_jet_order(&self) -> Option<u16> {
        self.atoms()
            .into_iter()
            .filter_map(|a| match a {
                Atom::UJet(k) => Some(k),
                _ => None,
            })
            .max()
    }

    /// Coefficient of `a^e` viewing the polynomial as univariate in `a`.
    pub fn coeff_in(&self, a: Atom, e: u32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.degree_of(a) == e {
                out.terms.insert(m.without(a), c.clone());
            }
        }
        out
    }

    /// Partial derivative with respect to `a`.
    pub fn partial(&self, a: Atom) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_of(a);
            if e > 0 {
                let m2 = m.reduce(a, 1).expect("degree checked");
                out.add_term(m2, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Antiderivative in `a` with zero integration constant.
    pub fn integrate_in(&self, a: Atom) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_of(a);
            let m2 = m.mul(&Monomial::atom(a));
            out.add_term(m2, c / Rational::from_integer((e + 1).into()));
        }
        out
    }

    /// Apply the derivation determined by its action on atoms (Leibniz rule).
    /// Atoms for which `d` returns `None` are constants.
    pub fn derive_by<F>(&self, d: F) -> MultiPoly
    where
        F: Fn(Atom) -> Option<MultiPoly>,
    {
        let mut cache: HashMap<Atom, Option<MultiPoly>> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            for &(a, e) in m.factors() {
                let da = cache.entry(a).or_insert_with(|| d(a));
                let Some(da) = da else { continue };
                if da.is_zero() {
                    continue;
                }
                let rest = m.reduce(a, 1).expect("atom present");
                let k = c * Rational::from_integer(e.into());
                for (dm, dc) in da.terms() {
                    out.add_term(rest.mul(dm), &k * dc);
                }
            }
        }
        out
    }

    /// Replace atoms by polynomials; atoms absent from `map` stay.
    pub fn substitute(&self, map: &BTreeMap<Atom, MultiPoly>) -> MultiPoly {
        let mut powers: HashMap<(Atom, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = MultiPoly::constant(c.clone());
            for &(a, e) in m.factors() {
                match map.get(&a) {
                    Some(v) => {
                        let pw = powers.entry((a, e)).or_insert_with(|| v.pow(e));
                        acc = &acc * &*pw;
                    }
                    None => kept.push((a, e)),
                }
                if acc.is_zero() {
                    break;
                }
            }
            let kept = Monomial::from_factors(kept);
            for (am, ac) in acc.into_terms() {
                out.add_term(am.mul(&kept), ac);
            }
        }
        out
    }

    /// Replace atoms by rational values; atoms absent from `vals` stay.
    pub fn substitute_values(&self, vals: &BTreeMap<Atom, Rational>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut k = c.clone();
            let mut kept = Vec::new();
            for &(a, e) in m.factors() {
                match vals.get(&a) {
                    Some(v) => k *= num_traits::pow(v.clone(), e as usize),
                    None => kept.push((a, e)),
                }
            }
            out.add_term(Monomial::from_factors(kept), k);
        }
        out
    }

    /// Full evaluation; every atom must be bound.
    pub fn eval(&self, vals: &BTreeMap<Atom, Rational>) -> Result<Rational, ExactError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut k = c.clone();
            for &(a, e) in m.factors() {
                let v = vals.get(&a).ok_or(ExactError::Unbound(a))?;
                k *= num_traits::pow(v.clone(), e as usize);
            }
            acc += k;
        }
        Ok(acc)
    }

    /// Generic evaluation into any ring, atoms mapped by `f`.
    pub fn eval_in<R: super::Ring, F: Fn(Atom) -> R>(&self, f: F) -> R {
        let mut cache: HashMap<(Atom, u32), R> = HashMap::new();
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut k = R::from_rational(c.clone());
            for &(a, e) in m.factors() {
                let pw = cache.entry((a, e)).or_insert_with(|| f(a).pow_u(e));
                k = k.times(pw);
            }
            acc = acc.plus(&k);
        }
        acc
    }

    /// Drop the terms for which `keep` is false.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Atom> for MultiPoly {
    fn from(a: Atom) -> Self {
        MultiPoly::atom(a)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        debug_assert!(self.check_tags(rhs).is_ok(), "ring-tag mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        debug_assert!(self.check_tags(rhs).is_ok(), "ring-tag mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert!(self.check_tags(rhs).is_ok(), "ring-tag mismatch");
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => *o.get_mut() += c,
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { terms: acc }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { (&self).$f(&rhs) }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly { (&self).$f(rhs) }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn u() -> MultiPoly {
        MultiPoly::atom(Atom::UJet(0))
    }

    #[test]
    fn difference_of_squares() {
        let one = MultiPoly::one();
        let p = (u() + &one) * (u() - &one);
        assert_eq!(p, u() * u() - one);
    }

    #[test]
    fn substitute_value() {
        let p = (u() * u()).scale(&rat(1, 8));
        let mut vals = BTreeMap::new();
        vals.insert(Atom::UJet(0), rat(3, 2));
        assert_eq!(p.substitute_values(&vals), MultiPoly::constant(rat(9, 32)));
        assert_eq!(p.eval(&vals).unwrap(), rat(9, 32));
    }

    #[test]
    fn tag_discipline() {
        let q = MultiPoly::atom(Atom::OperQ(1));
        assert!(u().checked_mul(&q).is_err());
        assert!(u().checked_mul(&MultiPoly::atom(Atom::Var(0))).is_ok());
    }

    #[test]
    fn derivation_and_partials() {
        let x = MultiPoly::atom(Atom::X);
        let p = &x * &u();
        // d/dx with u' as derivative of u and dx/dx = 1
        let d = p.derive_by(|a| match a {
            Atom::UJet(k) => Some(MultiPoly::atom(Atom::UJet(k + 1))),
            Atom::STime(0) => Some(MultiPoly::one()),
            _ => None,
        });
        assert_eq!(d, u() + &x * MultiPoly::atom(Atom::UJet(1)));
        assert_eq!(p.partial(Atom::X), u());
        assert_eq!((u() * u()).integrate_in(Atom::UJet(0)), u().pow(3).scale(&rat(1, 3)));
        assert_eq!(u().pow(3).coeff_in(Atom::UJet(0), 3), MultiPoly::constant(int(1)));
    }

    #[test]
    fn display_is_sorted() {
        let p = u().pow(2).scale(&rat(3, 8)) + MultiPoly::atom(Atom::UJet(2)).scale(&rat(1, 8));
        assert_eq!(p.to_string(), "3/8*u^2 + 1/8*u_xx");
    }
}
