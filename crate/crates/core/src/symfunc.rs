//! Elementary, complete homogeneous and power-sum symmetric polynomials, and
//! the conversions from the elementary basis written as sums over
//! compositions and partitions.

use serde::{Deserialize, Serialize};

use crate::exact::rational::{factorial, int};
use crate::exact::{Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymKind {
    Elementary,
    CompleteHomogeneous,
    PowerSum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymBasisVector<R> {
    pub kind: SymKind,
    /// Number of variables.
    pub n: usize,
    /// `values[k]` is the degree-`k` member.
    pub values: Vec<R>,
}

impl<R: Ring> SymBasisVector<R> {
    /// Member of degree `k`; elementary members beyond `n` are zero.
    pub fn get(&self, k: usize) -> R {
        match self.values.get(k) {
            Some(v) => v.clone(),
            None if self.kind == SymKind::Elementary && k > self.n => R::zero(),
            None => panic!("degree {k} not computed for {:?}", self.kind),
        }
    }
}

/// `e_0..e_n` of the given roots, via the product expansion.
pub fn e_from_roots<R: Ring>(x: &[R]) -> SymBasisVector<R> {
    let mut e = vec![R::one()];
    for xi in x {
        let mut next = e.clone();
        next.push(R::zero());
        for k in 1..next.len() {
            next[k] = next[k].plus(&e[k - 1].times(xi));
        }
        e = next;
    }
    SymBasisVector { kind: SymKind::Elementary, n: x.len(), values: e }
}

/// All compositions of `k` (ordered, positive parts).
pub fn compositions(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=k {
        for mut rest in compositions(k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All `(b_1..b_m)` with `b_1 + 2 b_2 + ... + m b_m = m`.
pub fn weighted_partitions(m: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i > m {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for b in 0..=left / i {
            cur.push(b);
            rec(i + 1, m, left - b * i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, m, m, &mut Vec::new(), &mut out);
    out
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// `h_0..h_kmax` from the elementary basis, by the alternating sum over
/// compositions. Members with `k > n` are genuinely nonzero.
pub fn h_from_e<R: Ring>(e: &SymBasisVector<R>, kmax: usize) -> SymBasisVector<R> {
    assert_eq!(e.kind, SymKind::Elementary);
    let mut h = vec![R::one()];
    for k in 1..=kmax {
        let mut acc = R::zero();
        for comp in compositions(k) {
            let mut term = R::from_rational(sign(comp.len()));
            for &b in &comp {
                term = term.times(&e.get(b).scale(&sign(b)));
                if term.is_zero() {
                    break;
                }
            }
            acc = acc.plus(&term);
        }
        h.push(acc);
    }
    SymBasisVector { kind: SymKind::CompleteHomogeneous, n: e.n, values: h }
}

/// `S_0..S_mmax` from the elementary basis, by the multinomial sum over
/// weighted partitions.
pub fn powersum_from_e<R: Ring>(e: &SymBasisVector<R>, mmax: usize) -> SymBasisVector<R> {
    assert_eq!(e.kind, SymKind::Elementary);
    let mut s = vec![R::from_int(e.n as i64)];
    for m in 1..=mmax {
        let mut acc = R::zero();
        for b in weighted_partitions(m) {
            let total: usize = b.iter().sum();
            let mut multinomial = factorial(total as u32);
            for &bi in &b {
                multinomial /= factorial(bi as u32);
            }
            let coef = sign(total) * multinomial / int(total as i64);
            let mut term = R::from_rational(coef);
            for (i, &bi) in b.iter().enumerate() {
                if bi > 0 {
                    term = term.times(&e.get(i + 1).pow_u(bi as u32));
                }
            }
            acc = acc.plus(&term);
        }
        s.push(acc.scale(&(sign(m) * int(m as i64))));
    }
    SymBasisVector { kind: SymKind::PowerSum, n: e.n, values: s }
}

/// Definitional `h_k`: sum over multisets of indices.
pub fn h_direct<R: Ring>(x: &[R], k: usize) -> R {
    fn rec<R: Ring>(x: &[R], start: usize, left: usize, cur: R, acc: &mut R) {
        if left == 0 {
            *acc = acc.plus(&cur);
            return;
        }
        for i in start..x.len() {
            rec(x, i, left - 1, cur.times(&x[i]), acc);
        }
    }
    let mut acc = R::zero();
    rec(x, 0, k, R::one(), &mut acc);
    acc
}

/// Definitional `S_m` (with `S_0 = n`).
pub fn powersum_direct<R: Ring>(x: &[R], m: usize) -> R {
    if m == 0 {
        return R::from_int(x.len() as i64);
    }
    x.iter().fold(R::zero(), |acc, xi| acc.plus(&xi.pow_u(m as u32)))
}

/// Definitional `e_k`: sum over strictly increasing index tuples.
pub fn e_direct<R: Ring>(x: &[R], k: usize) -> R {
    fn rec<R: Ring>(x: &[R], start: usize, left: usize, cur: R, acc: &mut R) {
        if left == 0 {
            *acc = acc.plus(&cur);
            return;
        }
        for i in start..x.len() {
            rec(x, i + 1, left - 1, cur.times(&x[i]), acc);
        }
    }
    let mut acc = R::zero();
    rec(x, 0, k, R::one(), &mut acc);
    acc
}

/// Residual of `(n-k) e_k = sum_{i<=k} (-1)^i e_{k-i} S_i`, for `0 <= k <= n`.
pub fn newton_identity_residual<R: Ring>(x: &[R], k: usize) -> R {
    let n = x.len();
    let lhs = e_direct(x, k).scale(&int(n as i64 - k as i64));
    let mut rhs = R::zero();
    for i in 0..=k {
        rhs = rhs.plus(&e_direct(x, k - i).times(&powersum_direct(x, i)).scale(&sign(i)));
    }
    lhs.minus(&rhs)
}

/// Residual of `S_k = sum_{i=k-n}^{k-1} (-1)^{k-1+i} e_{k-i} S_i`, for `k >= n`.
pub fn newton_recursion_residual<R: Ring>(x: &[R], k: usize) -> R {
    let n = x.len();
    let mut rhs = R::zero();
    for i in k.saturating_sub(n)..k {
        rhs = rhs.plus(&e_direct(x, k - i).times(&powersum_direct(x, i)).scale(&sign(k - 1 + i)));
    }
    powersum_direct(x, k).minus(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Atom, MultiPoly};

    fn vars(n: u16) -> Vec<MultiPoly> {
        (0..n).map(|i| MultiPoly::atom(Atom::Var(i))).collect()
    }

    #[test]
    fn elementary_small() {
        let x = vars(2);
        let e = e_from_roots(&x);
        assert_eq!(e.get(1), &x[0] + &x[1]);
        assert_eq!(e.get(2), &x[0] * &x[1]);
        assert_eq!(e.get(3), MultiPoly::zero());
        let e = e_from_roots(&[int(1), int(2), int(3)]);
        assert_eq!(e.values, vec![int(1), int(6), int(11), int(6)]);
    }

    #[test]
    fn complete_homogeneous_small() {
        let x = vars(2);
        let h = h_from_e(&e_from_roots(&x), 4);
        assert_eq!(h.get(0), MultiPoly::one());
        assert_eq!(h.get(1), &x[0] + &x[1]);
        assert_eq!(h.get(2), x[0].pow(2) + &x[0] * &x[1] + x[1].pow(2));
        for k in 0..=4 {
            assert_eq!(h.get(k), h_direct(&x, k));
        }
    }

    #[test]
    fn power_sums_small() {
        let x = vars(3);
        let e = e_from_roots(&x);
        let s = powersum_from_e(&e, 5);
        assert_eq!(s.get(0), MultiPoly::int(3));
        assert_eq!(s.get(1), e.get(1));
        assert_eq!(s.get(2), e.get(1).pow(2) - e.get(2).scale(&int(2)));
        for m in 0..=5 {
            assert_eq!(s.get(m), powersum_direct(&x, m));
        }
    }

    #[test]
    fn newton_identities_n4() {
        let x = vars(4);
        for k in 0..=4 {
            assert!(newton_identity_residual(&x, k).is_zero());
        }
        for k in 4..=7 {
            assert!(newton_recursion_residual(&x, k).is_zero());
        }
    }
}
