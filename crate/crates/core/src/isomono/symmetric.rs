//! Symmetric Darboux coordinates `Q_i = e_i(q)` and their momenta `P_i`,
//! in which `hatL` and the Hamiltonians become polynomial.

use super::oper::OperPoint;
use super::times::IrregularTimes;
use crate::exact::{int, upoly, Atom, MultiPoly, Rational, Ring};
use crate::minimal::hamiltonian::CoordError;
use crate::minimal::wave::from_poly_entries;
use crate::minimal::LaxMat;
use crate::symfunc::{e_from_roots, h_from_e, powersum_from_e, SymBasisVector, SymKind};

/// `(Q_1..Q_g, P_1..P_g)` with the irregular times.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoint<R> {
    /// `qs[i]` is `Q_{i+1}`.
    pub qs: Vec<R>,
    /// `ps[i]` is `P_{i+1}`.
    pub ps: Vec<R>,
    pub times: IrregularTimes<R>,
}

fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// `p_i = sum_k P_k e_{k-1}(q without q_i)`, i.e. `sum_k P_k de_k/dq_i`.
pub fn oper_momenta<R: Ring>(q: &[R], ps: &[R]) -> Vec<R> {
    (0..q.len())
        .map(|i| {
            let rest: Vec<R> = q.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
            let e = e_from_roots(&rest);
            ps.iter().enumerate().fold(R::zero(), |acc, (k, pk)| acc.plus(&pk.times(&e.get(k))))
        })
        .collect()
}

struct Tables<R> {
    h: Vec<R>,
    s: Vec<R>,
}

impl<R: Ring> SymPoint<R> {
    pub fn g(&self) -> usize {
        self.times.g
    }

    /// The symmetric coordinates of an oper point. `P` is read off the
    /// Lagrange polynomial `Q(lambda)` by back substitution on
    /// `[Q]_j = (-1)^{j-1} sum_{i>j} P_i Q_{i-j-1}`.
    pub fn from_oper(pt: &OperPoint<R>) -> Result<Self, CoordError> {
        let g = pt.g();
        let qs = e_from_roots(&pt.q).values[1..].to_vec();
        let mut lag = pt.q_poly()?;
        lag.resize(g, R::zero());
        let mut ps = vec![R::zero(); g];
        for j in (0..g).rev() {
            let w = lag[j].scale(&sign(j as i64 - 1));
            // Q_0 = 1 on the diagonal
            let mut acc = w;
            for i in j + 2..=g {
                acc = acc.minus(&ps[i - 1].times(&get_q(&qs, (i - j - 1) as i64)));
            }
            ps[j] = acc;
        }
        Ok(SymPoint { qs, ps, times: pt.times.clone() })
    }

    /// Back to oper coordinates, given the roots `q` of
    /// `sum (-1)^{g-m} Q_{g-m} lambda^m`; the roots are checked.
    pub fn to_oper(&self, q: &[R]) -> Option<OperPoint<R>> {
        let e = e_from_roots(q);
        if e.values[1..] != self.qs[..] {
            return None;
        }
        Some(OperPoint::new(q.to_vec(), oper_momenta(q, &self.ps), self.times.clone()))
    }

    /// `Q_k` with `Q_0 = 1` and zero outside `0..=g`.
    pub fn q(&self, k: i64) -> R {
        get_q(&self.qs, k)
    }

    /// `P_k`, 1-based.
    pub fn p(&self, k: usize) -> R {
        self.ps[k - 1].clone()
    }

    /// `W_j = sum_{i=j+1}^g P_i Q_{i-j-1}`.
    pub fn w(&self, j: usize) -> R {
        (j + 1..=self.g()).fold(R::zero(), |acc, i| acc.plus(&self.p(i).times(&self.q(i as i64 - j as i64 - 1))))
    }

    fn tables(&self) -> Tables<R> {
        let g = self.g();
        let mut values = vec![R::one()];
        values.extend(self.qs.iter().cloned());
        let e = SymBasisVector { kind: SymKind::Elementary, n: g, values };
        Tables { h: h_from_e(&e, 2 * g + 2).values, s: powersum_from_e(&e, g).values }
    }

    /// `Q(lambda) = sum_{j<g} (-1)^{j-1} W_j lambda^j`.
    pub fn lagrange_q(&self) -> Vec<R> {
        (0..self.g()).map(|j| self.w(j).scale(&sign(j as i64 - 1))).collect()
    }

    /// `hatL` in symmetric coordinates; every entry is polynomial in
    /// `(Q, P, t, lambda)`.
    pub fn hatl(&self) -> LaxMat<R> {
        let g = self.g() as i64;
        let tb = self.tables();
        let hq = |k: i64| if k < 0 { R::zero() } else { tb.h[k as usize].clone() };
        let pinf = self.times.p2_coeffs();
        let lag = self.lagrange_q();
        let l12: Vec<R> = (0..=g).map(|m| self.q(g - m).scale(&sign(g - m))).collect();
        let mut l21 = vec![R::zero(); g as usize + 2];
        for i in 0..=g + 1 {
            let mut acc = R::zero();
            for j in g + i..=2 * g + 1 {
                acc = acc.plus(&pinf[j as usize].times(&hq(j - g - i)));
            }
            l21[i as usize] = acc.negate();
        }
        let w: Vec<R> = (0..g as usize).map(|j| self.w(j)).collect();
        for i in 0..=g - 2 {
            let mut acc = R::zero();
            for j1 in i + 1..g {
                for j2 in g + i - j1..g {
                    let term = w[j1 as usize].times(&w[j2 as usize]).times(&hq(j1 + j2 - g - i));
                    acc = acc.plus(&term.scale(&sign(j1 + j2)));
                }
            }
            l21[i as usize] = l21[i as usize].minus(&acc);
        }
        from_poly_entries([[upoly::neg(&lag), l12], [upoly::trim(l21), lag]])
    }

    /// `Ham~^(e_{2k-1})(Q, P, t)`: polynomial, quadratic in `P`.
    pub fn ham(&self, k: usize) -> R {
        let g = self.g() as i64;
        let nu = self.times.nu(k);
        let tb = self.tables();
        let hq = |k: i64| if k < 0 { R::zero() } else { tb.h[k as usize].clone() };
        let sq = |m: i64| tb.s[m as usize].clone();
        let q = |k: i64| self.q(k);
        let p = |k: i64| self.p(k as usize);
        let pinf = self.times.p2_coeffs();
        let mut tot = R::zero();
        for i in 1..=g {
            let mut lin = R::zero();
            for k in i + 1..=g {
                lin = lin.plus(&p(k).times(&q(k - 1 - i)).scale(&(sign(i) * int(g - i))));
                for m in i + 1..k {
                    lin = lin.plus(&p(k).times(&q(k - 1 - m)).times(&sq(m - i)).scale(&sign(m)));
                }
            }
            let mut quad = R::zero();
            for k1 in 1..=g {
                for k2 in 1..=g {
                    let mut br = R::zero();
                    for r1 in (i - k2).max(0)..=(k1 - 1).min(i - 1) {
                        br = br.plus(&q(k1 - 1 - r1).times(&q(k2 - i + r1)));
                    }
                    br = br.scale(&sign(i - 1));
                    for r1 in 0..k1 {
                        for r2 in 0..k2 {
                            if r1 + r2 < g {
                                continue;
                            }
                            let inner = (i..=g).fold(R::zero(), |acc, m| {
                                acc.plus(&q(g - m).times(&hq(r1 + r2 + m - i - g + 1)).scale(&sign(g - m)))
                            });
                            br = br.plus(&q(k1 - 1 - r1).times(&q(k2 - 1 - r2)).times(&inner).scale(&sign(r1 + r2)));
                        }
                    }
                    quad = quad.plus(&p(k1).times(&p(k2)).times(&br));
                }
            }
            let mut pot = R::zero();
            for r in g..=2 * g + 1 {
                for m in i..=g {
                    pot = pot.plus(&pinf[r as usize].times(&q(g - m)).times(&hq(r + m - i - g + 1)).scale(&sign(g - m)));
                }
            }
            tot = tot.plus(&nu[(i - 1) as usize].times(&quad.minus(&lin).plus(&pot)));
        }
        tot
    }

    /// The correction term `-sum_j mu_j beta'_{k-1}(lambda_j)/prod_{i != j}(lambda_j - lambda_i)`
    /// as a polynomial in `(Q, P)`:
    /// `-(-1)^{g-k}(g+1-k) sum_{i=g+2-k}^g P_i Q_{i+k-g-2}
    ///  - sum_{i,j} (-1)^{g+j-i} i Q_{g-i} h_{i+j+k-2g-1} W_j`.
    pub fn correction(&self, k: usize) -> R {
        let (g, k) = (self.g() as i64, k as i64);
        let tb = self.tables();
        let hq = |n: i64| if n < 0 { R::zero() } else { tb.h[n as usize].clone() };
        let mut first = R::zero();
        for i in g + 2 - k..=g {
            first = first.plus(&self.p(i as usize).times(&self.q(i + k - g - 2)));
        }
        first = first.scale(&(sign(g - k) * int(g + 1 - k)));
        let mut second = R::zero();
        for i in 1..=g {
            for j in 0..g {
                let term = self.q(g - i).times(&hq(i + j + k - 2 * g - 1)).times(&self.w(j as usize));
                second = second.plus(&term.scale(&(sign(g + j - i) * int(i))));
            }
        }
        first.plus(&second).negate()
    }
}

fn get_q<R: Ring>(qs: &[R], k: i64) -> R {
    match k {
        0 => R::one(),
        k if k < 0 => R::zero(),
        k => qs.get(k as usize - 1).cloned().unwrap_or_else(R::zero),
    }
}

/// A fully symbolic point: `Q_i`, `P_i` and `t_{inf,2i-1}` as atoms.
pub fn symbolic_point(g: usize) -> SymPoint<MultiPoly> {
    SymPoint {
        qs: (1..=g as u16).map(|i| MultiPoly::atom(Atom::SymQ(i))).collect(),
        ps: (1..=g as u16).map(|i| MultiPoly::atom(Atom::SymP(i))).collect(),
        times: IrregularTimes::new(g, (0..g as u16).map(|i| MultiPoly::atom(Atom::ITime(2 * i + 1))).collect()),
    }
}

/// `D * (Q(lambda) - sum_j (-1)^{j-1} W_j lambda^j)` with `p_i` given by the
/// definition of `P`, `D = prod_{a<b} (q_a - q_b)` clearing every
/// Lagrange denominator. `q_i` are oper atoms and `P_k` symmetric atoms;
/// the result is a dense lambda-polynomial that vanishes identically.
pub fn lagrange_identity_residual(g: usize) -> Vec<MultiPoly> {
    let q: Vec<MultiPoly> = (1..=g as u16).map(|i| MultiPoly::atom(Atom::OperQ(i))).collect();
    let ps: Vec<MultiPoly> = (1..=g as u16).map(|i| MultiPoly::atom(Atom::SymP(i))).collect();
    let p = oper_momenta(&q, &ps);
    let pair_product = |skip: Option<usize>| {
        let mut acc = MultiPoly::one();
        for a in 0..g {
            for b in a + 1..g {
                if Some(a) != skip && Some(b) != skip {
                    acc = &acc * &(&q[a] - &q[b]);
                }
            }
        }
        acc
    };
    let mut lhs: Vec<MultiPoly> = vec![];
    for i in 0..g {
        let rest: Vec<MultiPoly> = q.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
        let w = pair_product(Some(i)).scale(&sign(i as i64)).times(&p[i]);
        lhs = upoly::sub(&lhs, &upoly::scale(&upoly::from_roots(&rest), &w));
    }
    let sym = SymPoint {
        qs: e_from_roots(&q).values[1..].to_vec(),
        ps,
        times: IrregularTimes::new(g, vec![MultiPoly::zero(); g]),
    };
    let rhs = upoly::scale(&sym.lagrange_q(), &pair_product(None));
    upoly::trim(upoly::sub(&lhs, &rhs))
}
