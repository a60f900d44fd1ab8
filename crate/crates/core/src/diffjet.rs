//! Differential polynomials in `u`: the `x`-derivation, the KdV
//! time-derivations, the Lenard family `R_{2l-1}[u]` and the string equation.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exact::{rat, Atom, ExactError, LambdaSeries, Monomial, MultiPoly, Rational};

/// A `MultiPoly` restricted to `UJet` and `STime` atoms.
pub type DiffPoly = MultiPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiffJetError {
    #[error("flow index {l} exceeds the Lenard table capacity {cap}")]
    OutOfRange { l: usize, cap: usize },
    #[error("not a total x-derivative: {0}")]
    NotTotalDerivative(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `u^{(k)}` as a polynomial.
pub fn u(k: u16) -> DiffPoly {
    MultiPoly::atom(Atom::UJet(k))
}

/// `s_{2l+1}` as a polynomial; `s(0)` is `x`.
pub fn s(l: u16) -> DiffPoly {
    MultiPoly::atom(Atom::STime(l))
}

/// Total `x`-derivative: `u^{(k)} -> u^{(k+1)}`, `x -> 1`, other times constant.
pub fn d_x(p: &DiffPoly) -> DiffPoly {
    p.derive_by(|a| match a {
        Atom::UJet(k) => Some(u(k + 1)),
        Atom::STime(0) => Some(MultiPoly::one()),
        _ => None,
    })
}

pub fn d_x_n(p: &DiffPoly, n: usize) -> DiffPoly {
    let mut q = p.clone();
    for _ in 0..n {
        q = d_x(&q);
    }
    q
}

/// `d_x` applied coefficientwise to a lambda-series.
pub fn d_x_series(s: &LambdaSeries<DiffPoly>) -> LambdaSeries<DiffPoly> {
    s.map(d_x)
}

/// `c_{2l-1}(s)` for `0 <= l <= g+1`: `(2l+1)/2 s_{2l+1}` below `g`, then 0, then 1.
pub fn c_coeff(g: usize, l: usize) -> DiffPoly {
    if l == g + 1 {
        MultiPoly::one()
    } else if l == g {
        MultiPoly::zero()
    } else if l < g {
        s(l as u16).scale(&rat(2 * l as i64 + 1, 2))
    } else {
        MultiPoly::zero()
    }
}

/// The Lenard polynomials: entry `l` holds `R_{2l-1}`, with `R_{-1} = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LenardTable {
    r: Vec<DiffPoly>,
}

impl LenardTable {
    /// Quadratic recursion equivalent to the generating-series relation
    /// `(B')^2/4 + ((lambda - u) B - B''/2) B = lambda`.
    pub fn new(lmax: usize) -> Self {
        Self::with_second_derivative_weight(lmax, rat(1, 4))
    }

    /// Same recursion with a configurable weight on the `R R''` sum; only the
    /// weight `1/4` is consistent with the generating series.
    pub fn with_second_derivative_weight(lmax: usize, w: Rational) -> Self {
        let mut r = vec![MultiPoly::one()];
        let mut d1 = vec![MultiPoly::zero()];
        let mut d2 = vec![MultiPoly::zero()];
        let half_u = u(0).scale(&rat(1, 2));
        for l in 0..lmax {
            let mut next = MultiPoly::zero();
            for a in 1..=l {
                next -= &(&r[a] * &r[l + 1 - a]).scale(&rat(1, 2));
            }
            let mut quad = MultiPoly::zero();
            for a in 0..=l {
                quad += &(&r[a] * &r[l - a]);
                next += &(&d2[a] * &r[l - a]).scale(&w);
                next -= &(&d1[a] * &d1[l - a]).scale(&rat(1, 8));
            }
            next += &(&half_u * &quad);
            d1.push(d_x(&next));
            d2.push(d_x(d1.last().expect("pushed")));
            r.push(next);
        }
        LenardTable { r }
    }

    /// Largest `l` stored (`R_{2 lmax - 1}`).
    pub fn lmax(&self) -> usize {
        self.r.len() - 1
    }

    /// `R_{2l-1}`.
    pub fn r(&self, l: usize) -> &DiffPoly {
        &self.r[l]
    }

    pub fn entries(&self) -> &[DiffPoly] {
        &self.r
    }

    /// `R_{2l+1}` if present.
    fn flow_generator(&self, l: usize) -> Result<&DiffPoly, DiffJetError> {
        self.r.get(l + 1).ok_or(DiffJetError::OutOfRange { l, cap: self.lmax().saturating_sub(1) })
    }

    /// `du/ds_{2l+1} = 2 d_x R_{2l+1}`.
    pub fn flow(&self, l: usize) -> Result<DiffPoly, DiffJetError> {
        Ok(d_x(self.flow_generator(l)?).scale(&rat(2, 1)))
    }

    /// The derivation `d/ds_{2l+1}` for `l >= 1`: `u^{(k)} -> d_x^k(flow)`,
    /// `s_{2m+1} -> delta_{ml}`.
    pub fn d_s(&self, l: usize, p: &DiffPoly) -> Result<DiffPoly, DiffJetError> {
        let mut flows = FlowCache::new(self.flow(l)?);
        let top = p.max_jet_order().unwrap_or(0) as usize;
        flows.extend_to(top);
        Ok(p.derive_by(|a| match a {
            Atom::UJet(k) => Some(flows.get(k as usize).clone()),
            Atom::STime(m) if m as usize == l => Some(MultiPoly::one()),
            _ => None,
        }))
    }

    /// The generating series `B(lambda) = sum R_{2l-1} lambda^{-l}`, exact
    /// down to `lambda^{-lmax}`.
    pub fn generating_series(&self) -> LambdaSeries<DiffPoly> {
        let map: BTreeMap<i64, DiffPoly> =
            self.r.iter().enumerate().map(|(l, r)| (-2 * l as i64, r.clone())).collect();
        LambdaSeries::from_map2(false, map, Some(-2 * self.lmax() as i64))
    }

    /// `(B')^2/4 + ((lambda - u) B - B''/2) B - lambda`, which must vanish
    /// wherever it is defined.
    pub fn generating_residual(&self) -> LambdaSeries<DiffPoly> {
        let b = self.generating_series();
        let b1 = d_x_series(&b);
        let b2 = d_x_series(&b1);
        let lam_minus_u = LambdaSeries::from_poly(vec![-u(0), MultiPoly::one()]);
        let first = b1.mul(&b1).scale(&rat(1, 4));
        let second = lam_minus_u.mul(&b).sub(&b2.scale(&rat(1, 2))).mul(&b);
        first.add(&second).sub(&LambdaSeries::lambda())
    }
}

/// Memoised `d_x^k(flow)`.
struct FlowCache {
    v: Vec<DiffPoly>,
}

impl FlowCache {
    fn new(f: DiffPoly) -> Self {
        FlowCache { v: vec![f] }
    }
    fn extend_to(&mut self, k: usize) {
        while self.v.len() <= k {
            let next = d_x(self.v.last().expect("nonempty"));
            self.v.push(next);
        }
    }
    fn get(&self, k: usize) -> &DiffPoly {
        &self.v[k]
    }
}

/// Integrate a total `x`-derivative of a differential polynomial in `u`
/// (no explicit `x`), returning the antiderivative without constant term.
pub fn integrate_total(d: &DiffPoly) -> Result<DiffPoly, DiffJetError> {
    let mut rest = d.clone();
    let mut out = MultiPoly::zero();
    while !rest.is_zero() {
        let n = match rest.max_jet_order() {
            Some(n) if n > 0 => n,
            _ => return Err(DiffJetError::NotTotalDerivative(d.to_string())),
        };
        if rest.degree_in(Atom::UJet(n)) > 1 {
            return Err(DiffJetError::NotTotalDerivative(d.to_string()));
        }
        let c = rest.coeff_in(Atom::UJet(n), 1);
        let piece = c.integrate_in(Atom::UJet(n - 1));
        rest -= &d_x(&piece);
        out += &piece;
    }
    Ok(out)
}

/// The Lenard polynomials obtained by integrating
/// `d_x R_{2l+1} = (d^3/4 + u d + u_x/2) R_{2l-1}`; entry `l` is `R_{2l-1}`.
pub fn lenard_by_integration(lmax: usize) -> Result<Vec<DiffPoly>, DiffJetError> {
    let mut r = vec![MultiPoly::one()];
    for l in 0..lmax {
        let prev = &r[l];
        let rhs = d_x_n(prev, 3).scale(&rat(1, 4)) + &u(0) * &d_x(prev) + (&u(1) * prev).scale(&rat(1, 2));
        r.push(integrate_total(&rhs)?);
    }
    Ok(r)
}

/// `R_{2g+1} + sum_{l=1}^{g-1} c_{2l-1} R_{2l-1}` plus `x/2` when `with_x`.
pub fn string_lhs(table: &LenardTable, g: usize, with_x: bool) -> DiffPoly {
    let mut out = table.r(g + 1).clone();
    for l in 1..g {
        out += &(&c_coeff(g, l) * table.r(l));
    }
    if with_x {
        out += &s(0).scale(&rat(1, 2));
    }
    out
}

/// Order of the highest `u`-derivative present.
pub fn differential_order(p: &DiffPoly) -> Option<u16> {
    p.max_jet_order()
}

/// Normal form modulo the `x`-differential ideal generated by the genus-`g`
/// string equation, which is linear in `u^{(2g)}` with a constant
/// coefficient: every `u^{(k)}` with `k >= 2g` is replaced by a polynomial in
/// `u, ..., u^{(2g-1)}` and the times.
#[derive(Clone, Debug)]
pub struct StringReducer {
    g: usize,
    /// `nf[j]` is the normal form of `u^{(2g+j)}`.
    nf: Vec<DiffPoly>,
}

impl StringReducer {
    pub fn new(table: &LenardTable, g: usize) -> Self {
        let lhs = string_lhs(table, g, true);
        let top = Atom::UJet(2 * g as u16);
        let lead = lhs.coeff_in(top, 1).as_constant().expect("string equation is linear in its top jet");
        let rest = &lhs - &(&lhs.coeff_in(top, 1) * &MultiPoly::atom(top));
        let sol = rest.scale(&(-lead.recip()));
        StringReducer { g, nf: vec![sol] }
    }

    fn top(&self) -> u16 {
        2 * self.g as u16
    }

    fn extend_to(&mut self, j: usize) {
        while self.nf.len() <= j {
            let d = d_x(self.nf.last().expect("nonempty"));
            let map: BTreeMap<Atom, DiffPoly> = [(Atom::UJet(self.top()), self.nf[0].clone())].into();
            self.nf.push(d.substitute(&map));
        }
    }

    /// The normal form of `p`.
    pub fn reduce(&mut self, p: &DiffPoly) -> DiffPoly {
        let top = self.top();
        let max = match p.max_jet_order() {
            Some(m) if m >= top => m,
            _ => return p.clone(),
        };
        self.extend_to((max - top) as usize);
        let map: BTreeMap<Atom, DiffPoly> =
            (top..=max).map(|k| (Atom::UJet(k), self.nf[(k - top) as usize].clone())).collect();
        p.substitute(&map)
    }
}

/// The order-7 genus-2 ODE in reference form, with an optional replacement for the
/// leading `1/64` coefficient (used to show that the check detects errors).
pub fn g2_ode_reference(lead: Option<Rational>) -> DiffPoly {
    let c = |n, d| MultiPoly::constant(rat(n, d));
    let u0 = u(0);
    let flow = c(1, 4) * u(3) + c(3, 2) * &u0 * u(1);
    let mut ode = (&u0 * &u(7)) * MultiPoly::constant(lead.unwrap_or_else(|| rat(1, 64)));
    ode += &(c(3, 32) * &u0 * (c(10, 1) * u(3) * u(2) + c(5, 1) * u(1) * u(4) + &u0 * u(5)));
    ode += &(c(5, 8) * &u0 * u(2) * &flow);
    ode += &(c(5, 8)
        * u0.pow(2)
        * (c(1, 4) * u(5) + c(3, 2) * &u0 * u(3) + c(9, 2) * u(1) * u(2)));
    ode += &(c(5, 8) * &u0 * u(1) * (c(1, 4) * u(4) + c(3, 2) * u(1).pow(2) + c(3, 2) * &u0 * u(2)));
    ode += &(c(15, 8) * u0.pow(3) * &flow);
    ode += &(c(3, 2) * u0.pow(2));
    let bracket = c(1, 16) * u(4) + c(5, 8) * &u0 * u(2) + c(5, 16) * u(1).pow(2) + c(5, 8) * u0.pow(3) + s(0);
    ode -= &(bracket * &flow);
    ode
}

/// Residual of the genus-2 elimination: with `E = 2 * string_lhs(2)` and
/// `F = d_{s_3} E`, the combination `u F - E du/ds_3` is free of `s_3` and
/// must equal the reference ODE.
pub fn g2_ode_residual(table: &LenardTable, reference: &DiffPoly) -> Result<DiffPoly, DiffJetError> {
    let e = string_lhs(table, 2, true).scale(&rat(2, 1));
    let f = table.d_s(1, &e)?;
    let flow = table.flow(1)?;
    let elim = &u(0) * &f - &e * &flow;
    Ok(elim - reference)
}

/// `true` iff the reference genus-2 ODE is reproduced exactly.
pub fn g2_ode_elimination_check(table: &LenardTable) -> Result<bool, DiffJetError> {
    Ok(g2_ode_residual(table, &g2_ode_reference(None))?.is_zero())
}

/// Leading term of a differential polynomial: the terms containing the
/// highest jet to the highest power.
pub fn leading_part(p: &DiffPoly) -> DiffPoly {
    match p.max_jet_order() {
        None => p.clone(),
        Some(n) => {
            let a = Atom::UJet(n);
            let d = p.degree_in(a);
            p.filter(|m: &Monomial| m.degree_of(a) == d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn c(n: i64, d: i64) -> MultiPoly {
        MultiPoly::constant(rat(n, d))
    }

    #[test]
    fn derivation_rules() {
        assert_eq!(d_x(&(u(0).pow(2).scale(&rat(1, 2)))), u(0) * u(1));
        assert_eq!(d_x(&(s(0) * u(0))), u(0) + s(0) * u(1));
        assert_eq!(d_x(&s(1)), MultiPoly::zero());
    }

    #[test]
    fn lenard_goldens() {
        let t = LenardTable::new(4);
        assert_eq!(t.r(1), &(c(1, 2) * u(0)));
        assert_eq!(t.r(2), &(c(3, 8) * u(0).pow(2) + c(1, 8) * u(2)));
        let r5 = c(1, 32) * u(4) + c(5, 16) * u(0) * u(2) + c(5, 32) * u(1).pow(2) + c(5, 16) * u(0).pow(3);
        assert_eq!(t.r(3), &r5);
        assert_eq!(d_x(t.r(2)), c(1, 8) * u(3) + c(3, 4) * u(0) * u(1));
    }

    #[test]
    fn eighth_weight_is_inconsistent() {
        let t = LenardTable::with_second_derivative_weight(2, rat(1, 8));
        assert_ne!(t.r(2), LenardTable::new(2).r(2));
    }

    #[test]
    fn generating_series_holds() {
        let t = LenardTable::new(6);
        let res = t.generating_residual();
        assert!(res.is_zero(), "{res}");
        assert!(res.floor2().unwrap() <= -8);
    }

    #[test]
    fn integration_route_agrees() {
        let t = LenardTable::new(5);
        assert_eq!(lenard_by_integration(5).unwrap(), t.entries().to_vec());
        assert!(integrate_total(&u(0)).is_err());
    }

    #[test]
    fn kdv_flow() {
        let t = LenardTable::new(4);
        assert_eq!(t.d_s(1, &u(0)).unwrap(), c(1, 4) * u(3) + c(3, 2) * u(0) * u(1));
        assert_eq!(t.d_s(1, &s(1)).unwrap(), MultiPoly::one());
        assert!(t.d_s(4, &u(0)).is_err());
        let a = t.d_s(2, &t.d_s(1, &u(0)).unwrap()).unwrap();
        let b = t.d_s(1, &t.d_s(2, &u(0)).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn string_equations() {
        let t = LenardTable::new(4);
        let s1 = string_lhs(&t, 1, true);
        assert_eq!(s1, c(1, 8) * u(2) + c(3, 8) * u(0).pow(2) + c(1, 2) * s(0));
        let s2 = string_lhs(&t, 2, true).scale(&int(2));
        let expected = c(1, 16) * u(4) + c(5, 8) * u(0) * u(2) + c(5, 16) * u(1).pow(2) + c(5, 8) * u(0).pow(3)
            + c(3, 2) * s(1) * u(0)
            + s(0);
        assert_eq!(s2, expected);
        for g in 1..=3 {
            let lhs = string_lhs(&t, g, true);
            assert_eq!(differential_order(&lhs), Some(2 * g as u16));
            assert_eq!(leading_part(&lhs), leading_part(t.r(g + 1)));
        }
    }

    #[test]
    fn g2_elimination() {
        let t = LenardTable::new(4);
        assert!(g2_ode_elimination_check(&t).unwrap());
        let bad = g2_ode_residual(&t, &g2_ode_reference(Some(rat(1, 32)))).unwrap();
        assert!(!bad.is_zero());
    }

    #[test]
    fn reducer_kills_the_string_equation() {
        let t = LenardTable::new(5);
        for g in 1..=3 {
            let mut red = StringReducer::new(&t, g);
            let lhs = string_lhs(&t, g, true);
            assert!(red.reduce(&lhs).is_zero());
            assert!(red.reduce(&d_x_n(&lhs, 3)).is_zero());
        }
    }
}
