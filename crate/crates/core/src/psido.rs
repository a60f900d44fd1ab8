//! Pseudo-differential operators over differential polynomials.
//!
//! `PsiOp` is `sum_k a_k d^k` with finitely many positive orders. Like
//! `LambdaSeries` it carries a watermark below which coefficients are unknown.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::diffjet::{d_x, string_lhs, DiffPoly, LenardTable};
use crate::exact::rational::binomial;
use crate::exact::{rat, MultiPoly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PsiError {
    #[error("order {order} requested below watermark {floor}")]
    BelowWatermark { order: i64, floor: i64 },
    #[error("operator is not 1 + lower order terms")]
    NotUnipotent,
    #[error("B_k needs odd k >= 1, got {0}")]
    EvenIndex(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsiOp {
    coeffs: BTreeMap<i64, DiffPoly>,
    floor: Option<i64>,
}

fn max_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.max(y)),
    }
}

impl PsiOp {
    pub fn zero() -> Self {
        PsiOp { coeffs: BTreeMap::new(), floor: None }
    }

    pub fn one() -> Self {
        PsiOp::term(MultiPoly::one(), 0)
    }

    /// `f d^k`.
    pub fn term(f: DiffPoly, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !f.is_zero() {
            coeffs.insert(k, f);
        }
        PsiOp { coeffs, floor: None }
    }

    /// `d^k`.
    pub fn d(k: i64) -> Self {
        PsiOp::term(MultiPoly::one(), k)
    }

    /// Multiplication by `f`.
    pub fn mult(f: DiffPoly) -> Self {
        PsiOp::term(f, 0)
    }

    /// `Q = d^2 + u`.
    pub fn q() -> Self {
        PsiOp::d(2).add(&PsiOp::mult(crate::diffjet::u(0)))
    }

    pub fn from_map(coeffs: BTreeMap<i64, DiffPoly>, floor: Option<i64>) -> Self {
        let mut coeffs: BTreeMap<i64, DiffPoly> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if let Some(f) = floor {
            coeffs.retain(|&k, _| k >= f);
        }
        PsiOp { coeffs, floor }
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn max_order(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &DiffPoly)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Result<DiffPoly, PsiError> {
        if let Some(f) = self.floor {
            if k < f {
                return Err(PsiError::BelowWatermark { order: k, floor: f });
            }
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(MultiPoly::zero))
    }

    pub fn truncate(&self, k: i64) -> Self {
        PsiOp::from_map(self.coeffs.clone(), max_floor(self.floor, Some(k)))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut c = self.coeffs.clone();
        for (k, v) in &o.coeffs {
            let e = c.entry(*k).or_insert_with(MultiPoly::zero);
            *e += v;
        }
        PsiOp::from_map(c, max_floor(self.floor, o.floor))
    }

    pub fn neg(&self) -> Self {
        PsiOp::from_map(self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(), self.floor)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, f: &DiffPoly) -> Self {
        PsiOp::from_map(self.coeffs.iter().map(|(k, c)| (*k, c * f)).collect(), self.floor)
    }

    fn reach(&self) -> Option<i64> {
        self.max_order().or(self.floor)
    }

    /// `self o o`, with orders below `depth` discarded. Uses
    /// `d^i o f = sum_k binom(i, k) f^{(k)} d^{i-k}` for every integer `i`.
    pub fn compose(&self, o: &Self, depth: i64) -> Self {
        let f1 = self.floor.and_then(|fa| o.reach().map(|t| fa + t));
        let f2 = o.floor.and_then(|fb| self.reach().map(|t| fb + t));
        let exact = self.floor.is_none() && o.floor.is_none() && self.coeffs.keys().all(|&k| k >= 0);
        // an exact differential operator composed with an exact operator needs no cut
        let floor = if exact { i64::MIN / 4 } else { max_floor(Some(depth), max_floor(f1, f2)).expect("depth is set") };
        let mut out: BTreeMap<i64, DiffPoly> = BTreeMap::new();
        let mut derivs: BTreeMap<i64, Vec<DiffPoly>> = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &o.coeffs {
                if i + j < floor {
                    continue;
                }
                let kmax = if i >= 0 { i.min(i + j - floor) } else { i + j - floor };
                let ds = derivs.entry(j).or_insert_with(|| vec![b.clone()]);
                while (ds.len() as i64) <= kmax {
                    let next = d_x(ds.last().expect("nonempty"));
                    ds.push(next);
                }
                for k in 0..=kmax {
                    let bin = binomial(i, k as u32);
                    let dk = &ds[k as usize];
                    if bin == rat(0, 1) || dk.is_zero() {
                        continue;
                    }
                    let t = (a * dk).scale(&bin);
                    *out.entry(i + j - k).or_insert_with(MultiPoly::zero) += &t;
                }
            }
        }
        PsiOp::from_map(out, if exact { None } else { Some(floor) })
    }

    /// `[self, o]`.
    pub fn commutator(&self, o: &Self, depth: i64) -> Self {
        self.compose(o, depth).sub(&o.compose(self, depth))
    }

    /// Non-negative orders.
    pub fn proj_plus(&self) -> Self {
        PsiOp::from_map(self.coeffs.range(0..).map(|(k, c)| (*k, c.clone())).collect(), None)
    }

    /// Negative orders.
    pub fn proj_minus(&self) -> Self {
        PsiOp::from_map(self.coeffs.range(..0).map(|(k, c)| (*k, c.clone())).collect(), self.floor)
    }

    /// Coefficient of `d^{-1}`.
    pub fn residue(&self) -> Result<DiffPoly, PsiError> {
        self.coeff(-1)
    }

    /// Inverse of `1 + N` with `N` of strictly negative order, down to `depth`.
    pub fn invert(&self, depth: i64) -> Result<Self, PsiError> {
        if self.coeff(0)? != MultiPoly::one() || self.coeffs.keys().any(|&k| k > 0) {
            return Err(PsiError::NotUnipotent);
        }
        let n = self.sub(&PsiOp::one());
        // 1/(1+N) = sum (-N)^m; N^m has order <= -m
        let neg = n.neg();
        let mut acc = PsiOp::one();
        let mut power = PsiOp::one();
        for _ in 1..=(-depth).max(0) {
            power = power.compose(&neg, depth);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        let floor = max_floor(Some(depth), self.floor);
        Ok(acc.truncate(floor.expect("depth is set")))
    }

    /// `Q^{1/2} = d + sum_{n>=1} x_n d^{-n}` down to order `-depth`.
    pub fn sqrt_q(depth: usize) -> Self {
        // coefficient of d^{1-n} in X o X: 2 x_n + x_{n-1}' + [Y o Y]_{1-n} = delta_{n1} u
        let mut x: Vec<DiffPoly> = vec![MultiPoly::zero()];
        let mut derivs: Vec<Vec<DiffPoly>> = vec![vec![]];
        for n in 1..=depth {
            let mut rhs = if n == 1 { crate::diffjet::u(0) } else { MultiPoly::zero() };
            if n >= 2 {
                rhs -= &d_x(&x[n - 1]);
            }
            for a in 1..n {
                for b in 1..n {
                    if a + b > n - 1 {
                        continue;
                    }
                    let k = n - 1 - a - b;
                    while derivs[b].len() <= k {
                        let next = match derivs[b].last() {
                            Some(l) => d_x(l),
                            None => x[b].clone(),
                        };
                        derivs[b].push(next);
                    }
                    let bin = binomial(-(a as i64), k as u32);
                    rhs -= &(&x[a] * &derivs[b][k]).scale(&bin);
                }
            }
            x.push(rhs.scale(&rat(1, 2)));
            derivs.push(vec![]);
        }
        let mut c: BTreeMap<i64, DiffPoly> = BTreeMap::new();
        c.insert(1, MultiPoly::one());
        for (n, xn) in x.into_iter().enumerate().skip(1) {
            c.insert(-(n as i64), xn);
        }
        PsiOp::from_map(c, Some(-(depth as i64)))
    }

    /// `Q^{l+1/2}` with enough depth to read its residue.
    pub fn q_half_power(l: usize) -> Self {
        let depth = 2 * l + 3;
        let half = PsiOp::sqrt_q(depth);
        let mut ql = PsiOp::one();
        for _ in 0..l {
            ql = ql.compose(&PsiOp::q(), 0);
        }
        ql.compose(&half, -(depth as i64))
    }

    /// `B_k = (Q^{k/2})_+` for odd `k`.
    pub fn b_op(k: usize) -> Result<Self, PsiError> {
        if k.is_multiple_of(2) {
            return Err(PsiError::EvenIndex(k));
        }
        Ok(PsiOp::q_half_power((k - 1) / 2).proj_plus())
    }
}

impl fmt::Display for PsiOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*d^({k})")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(w) = self.floor {
            write!(f, " + O(d^({}))", w - 1)?;
        }
        Ok(())
    }
}

/// Residual of `[B_{2l+1}, Q] = 2 d_x R_{2l+1}` (zero iff the identity holds).
pub fn kdv_flow_residual(table: &LenardTable, l: usize) -> Result<PsiOp, PsiError> {
    let b = PsiOp::b_op(2 * l + 1)?;
    let lhs = b.commutator(&PsiOp::q(), 0);
    let rhs = PsiOp::mult(d_x(table.r(l + 1)).scale(&rat(2, 1)));
    Ok(lhs.sub(&rhs))
}

/// Residual of `B_{k+2} = B_k Q + R_k d - R_k'/2` for odd `k = 2l - 1`.
pub fn b_recursion_residual(table: &LenardTable, l: usize) -> Result<PsiOp, PsiError> {
    let k = 2 * l - 1;
    let rk = table.r(l).clone();
    let lhs = PsiOp::b_op(k + 2)?;
    let rhs = PsiOp::b_op(k)?
        .compose(&PsiOp::q(), 0)
        .add(&PsiOp::term(rk.clone(), 1))
        .sub(&PsiOp::mult(d_x(&rk).scale(&rat(1, 2))));
    Ok(lhs.sub(&rhs))
}

/// `P^{(g)} = B_{2g+1} + sum_{l=1}^{g-1} (2l+1)/2 s_{2l+1} B_{2l-1}`.
pub fn p_operator(g: usize) -> Result<PsiOp, PsiError> {
    let mut p = PsiOp::b_op(2 * g + 1)?;
    for l in 1..g {
        p = p.add(&PsiOp::b_op(2 * l - 1)?.scale(&crate::diffjet::c_coeff(g, l)));
    }
    Ok(p)
}

/// Residual of `[Q, P^{(g)}] - 1 = -2 d_x(string_lhs)`.
pub fn string_operator_residual(table: &LenardTable, g: usize) -> Result<PsiOp, PsiError> {
    let p = p_operator(g)?;
    let lhs = PsiOp::q().commutator(&p, 0).sub(&PsiOp::one());
    let rhs = PsiOp::mult(d_x(&string_lhs(table, g, true)).scale(&rat(-2, 1)));
    Ok(lhs.sub(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffjet::u;

    fn c(n: i64, d: i64) -> MultiPoly {
        MultiPoly::constant(rat(n, d))
    }

    #[test]
    fn inverse_derivative() {
        let r = PsiOp::d(-1).compose(&PsiOp::d(1), -10);
        assert_eq!(r.truncate(-10), PsiOp::one().truncate(-10));
        let f = PsiOp::d(-1).compose(&PsiOp::mult(u(0)), -4);
        assert_eq!(f.coeff(-1).unwrap(), u(0));
        assert_eq!(f.coeff(-2).unwrap(), -u(1));
        assert_eq!(f.coeff(-3).unwrap(), u(2));
        assert_eq!(f.coeff(-4).unwrap(), -u(3));
        assert!(f.coeff(-5).is_err());
    }

    #[test]
    fn projections() {
        let a = PsiOp::d(1).add(&PsiOp::term(u(0), -1));
        assert_eq!(a.proj_plus(), PsiOp::d(1));
        assert_eq!(a.proj_plus().add(&a.proj_minus()), a);
    }

    #[test]
    fn sqrt_q_leading_terms() {
        let h = PsiOp::sqrt_q(8);
        assert_eq!(h.coeff(1).unwrap(), MultiPoly::one());
        assert_eq!(h.coeff(0).unwrap(), MultiPoly::zero());
        assert_eq!(h.coeff(-1).unwrap(), c(1, 2) * u(0));
        assert_eq!(h.coeff(-2).unwrap(), c(-1, 4) * u(1));
        assert_eq!(h.coeff(-3).unwrap(), c(1, 8) * (u(2) - u(0).pow(2)));
        let sq = h.compose(&h, -7);
        assert_eq!(sq.truncate(-7), PsiOp::q().truncate(-7));
    }

    #[test]
    fn inversion() {
        assert_eq!(PsiOp::one().invert(-5).unwrap().truncate(-5), PsiOp::one().truncate(-5));
        let a = PsiOp::one().add(&PsiOp::term(u(0), -1));
        let inv = a.invert(-4).unwrap();
        assert_eq!(inv.coeff(-1).unwrap(), -u(0));
        let back = a.compose(&inv, -4);
        assert_eq!(back, PsiOp::one().truncate(-4));
        let twice = inv.invert(-4).unwrap();
        assert_eq!(twice, a.truncate(-4));
        assert!(PsiOp::d(1).invert(-3).is_err());
    }

    #[test]
    fn flow_generators() {
        let b3 = PsiOp::b_op(3).unwrap();
        let expected = PsiOp::d(3).add(&PsiOp::term(c(3, 2) * u(0), 1)).add(&PsiOp::mult(c(3, 4) * u(1)));
        assert_eq!(b3, expected);
        let k = b3.commutator(&PsiOp::q(), 0);
        assert_eq!(k, PsiOp::mult(c(1, 4) * u(3) + c(3, 2) * u(0) * u(1)));
        let k1 = PsiOp::b_op(1).unwrap().commutator(&PsiOp::q(), 0);
        assert_eq!(k1, PsiOp::mult(u(1)));
    }

    #[test]
    fn operator_identities() {
        let t = LenardTable::new(5);
        for l in 0..=3 {
            assert!(kdv_flow_residual(&t, l).unwrap().is_zero());
        }
        for l in 1..=3 {
            assert!(b_recursion_residual(&t, l).unwrap().is_zero());
        }
        for l in 0..=3 {
            assert_eq!(&PsiOp::q_half_power(l).residue().unwrap(), t.r(l + 1));
        }
        assert!(string_operator_residual(&t, 1).unwrap().is_zero());
    }
}
