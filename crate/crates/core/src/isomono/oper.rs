//! The oper gauge: the Lagrange polynomial `Q`, the Vandermonde-solved
//! `H_{inf,k}`, the companion-like Lax matrix `L`, the gauge `G` to the
//! geometric gauge, and the geometric Lax matrix `hatL` in oper
//! coordinates.
//!
//! Everything here is generic over the coefficient ring. Divisions by
//! `q_i - q_j` go through `Ring::try_inverse`, so the same code evaluates
//! at rationals, on truncated Taylor series, and on dual numbers.

use super::times::IrregularTimes;
use crate::exact::{upoly, ExactError, Ring};
use crate::minimal::hamiltonian::CoordError;
use crate::minimal::wave::{from_poly_entries, poly_entries};
use crate::minimal::LaxMat;

/// Oper Darboux coordinates `(q, p)` with the irregular times.
#[derive(Clone, Debug, PartialEq)]
pub struct OperPoint<R> {
    pub q: Vec<R>,
    pub p: Vec<R>,
    pub times: IrregularTimes<R>,
}

/// A rational function `num / den` in `lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFn<R> {
    pub num: Vec<R>,
    pub den: Vec<R>,
}

impl<R: Ring> RatFn<R> {
    /// Equality by cross-multiplication.
    pub fn same_as(&self, o: &Self) -> bool {
        upoly::trim(upoly::sub(&upoly::mul(&self.num, &o.den), &upoly::mul(&o.num, &self.den))).is_empty()
    }
}

/// The companion-like matrix `(0, 1; L_21, L_22)`; only the second row is
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct OperL<R> {
    pub l21: RatFn<R>,
    pub l22: RatFn<R>,
}

impl<R: Ring> OperL<R> {
    pub fn same_as(&self, o: &Self) -> bool {
        self.l21.same_as(&o.l21) && self.l22.same_as(&o.l22)
    }
}

fn inverse<R: Ring>(x: &R, i: usize, j: usize) -> Result<R, CoordError> {
    x.try_inverse().ok_or(CoordError::Coincident(i.min(j), i.max(j)))
}

fn others<R: Ring>(q: &[R], i: usize) -> Vec<R> {
    q.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect()
}

/// `1 / prod_{j != i} (q_i - q_j)`.
fn inv_pi<R: Ring>(q: &[R], i: usize) -> Result<R, CoordError> {
    let mut acc = R::one();
    for (j, qj) in q.iter().enumerate() {
        if j != i {
            acc = acc.times(&inverse(&q[i].minus(qj), i, j)?);
        }
    }
    Ok(acc)
}

/// `l_i(lambda) = prod_{j != i} (lambda - q_j)/(q_i - q_j)`, dense.
pub fn lagrange_basis<R: Ring>(q: &[R], i: usize) -> Result<Vec<R>, CoordError> {
    Ok(upoly::scale(&upoly::from_roots(&others(q, i)), &inv_pi(q, i)?))
}

impl<R: Ring> OperPoint<R> {
    pub fn new(q: Vec<R>, p: Vec<R>, times: IrregularTimes<R>) -> Self {
        assert_eq!(q.len(), times.g);
        assert_eq!(p.len(), times.g);
        OperPoint { q, p, times }
    }

    pub fn g(&self) -> usize {
        self.times.g
    }

    /// `prod_j (lambda - q_j)`.
    pub fn pi(&self) -> Vec<R> {
        upoly::from_roots(&self.q)
    }

    /// `Q(lambda) = -sum_i p_i l_i(lambda)`, so that `Q(q_i) = -p_i`.
    pub fn q_poly(&self) -> Result<Vec<R>, CoordError> {
        let mut acc = vec![];
        for (i, p) in self.p.iter().enumerate() {
            acc = upoly::sub(&acc, &upoly::scale(&lagrange_basis(&self.q, i)?, p));
        }
        Ok(acc)
    }

    /// `sum_j p_j prod_{k != j} (lambda - q_k)`, the numerator of
    /// `sum_j p_j/(lambda - q_j)` over `prod (lambda - q_j)`.
    fn pole_numerator(&self) -> Vec<R> {
        self.p.iter().enumerate().fold(vec![], |acc, (j, p)| {
            upoly::add(&acc, &upoly::scale(&upoly::from_roots(&others(&self.q, j)), p))
        })
    }

    /// `H_{inf,0..g-1}` from `V^t H = b` with
    /// `b_i = p_i^2 + P_2(q_i) + sum_{j != i} (p_j - p_i)/(q_i - q_j)`.
    /// The Vandermonde system is solved in the Lagrange basis:
    /// `sum_k H_k lambda^k = sum_i b_i l_i(lambda)`.
    pub fn h_inf(&self) -> Result<Vec<R>, CoordError> {
        let g = self.g();
        let p2 = self.times.p2_coeffs();
        let mut hpoly: Vec<R> = vec![];
        for i in 0..g {
            let mut b = self.p[i].times(&self.p[i]).plus(&upoly::eval(&p2, &self.q[i]));
            for j in 0..g {
                if j != i {
                    let d = inverse(&self.q[i].minus(&self.q[j]), i, j)?;
                    b = b.plus(&self.p[j].minus(&self.p[i]).times(&d));
                }
            }
            hpoly = upoly::add(&hpoly, &upoly::scale(&lagrange_basis(&self.q, i)?, &b));
        }
        hpoly.resize(g, R::zero());
        Ok(hpoly)
    }

    /// `Ham^(e_{2k-1}) = sum_j nu_{j+1} H_{inf,j}`.
    pub fn ham(&self, k: usize) -> Result<R, CoordError> {
        let h = self.h_inf()?;
        Ok(self.times.nu(k).iter().zip(&h).fold(R::zero(), |acc, (n, h)| acc.plus(&n.times(h))))
    }

    /// The oper-gauge Lax matrix with
    /// `L_21 = -P_2 + sum H_{inf,k} lambda^k - sum p_j/(lambda - q_j)` and
    /// `L_22 = sum 1/(lambda - q_j)`, both over `prod (lambda - q_j)`.
    pub fn oper_l(&self) -> Result<OperL<R>, CoordError> {
        let pi = self.pi();
        let poly = upoly::sub(&self.h_inf()?, &self.times.p2_coeffs());
        let l21 = upoly::sub(&upoly::mul(&poly, &pi), &self.pole_numerator());
        Ok(OperL { l21: RatFn { num: l21, den: pi.clone() }, l22: RatFn { num: upoly::deriv(&pi), den: pi } })
    }

    /// `G = (1, 0; -Q, prod (lambda - q_j))`.
    pub fn gauge_g(&self) -> Result<[[Vec<R>; 2]; 2], CoordError> {
        Ok([[vec![R::one()], vec![]], [upoly::neg(&self.q_poly()?), self.pi()]])
    }

    /// The geometric Lax matrix:
    /// `hatL = (-Q, Pi; (Q/Pi)' + L_21/Pi - Q^2/Pi, Q)` with `Pi = prod (lambda - q_j)`.
    /// The (2,1) entry is a polynomial; the division is checked to be exact.
    pub fn geometric_hatl(&self) -> Result<LaxMat<R>, CoordError> {
        let pi = self.pi();
        let q = self.q_poly()?;
        let poly = upoly::sub(&self.h_inf()?, &self.times.p2_coeffs());
        let mut num = upoly::sub(&upoly::mul(&upoly::deriv(&q), &pi), &upoly::mul(&q, &upoly::deriv(&pi)));
        num = upoly::sub(&num, &self.pole_numerator());
        num = upoly::add(&num, &upoly::mul(&upoly::sub(&poly, &upoly::mul(&q, &q)), &pi));
        let l21 = upoly::div_exact(&num, &upoly::mul(&pi, &pi))?;
        Ok(from_poly_entries([[upoly::neg(&q), pi], [l21, q]]))
    }

    /// `Pi * (det hatL - formula)` where the formula is
    /// `P_2 - sum H_{inf,j} lambda^j + sum p_j/(lambda - q_j) - sum_i p_i l_i(lambda)/(lambda - q_i)`.
    /// Zero when the determinant expansion holds.
    pub fn det_expansion_residual(&self, hatl: &LaxMat<R>) -> Result<Vec<R>, CoordError> {
        let pi = self.pi();
        let det = hatl.det().poly_coeffs()?;
        let mut rhs = upoly::mul(&upoly::sub(&self.times.p2_coeffs(), &self.h_inf()?), &pi);
        rhs = upoly::add(&rhs, &self.pole_numerator());
        for (i, p) in self.p.iter().enumerate() {
            let li = lagrange_basis(&self.q, i)?;
            rhs = upoly::sub(&rhs, &upoly::scale(&upoly::mul(&li, &upoly::from_roots(&others(&self.q, i))), p));
        }
        Ok(upoly::trim(upoly::sub(&upoly::mul(&det, &pi), &rhs)))
    }
}

/// `L` recovered from a geometric Lax matrix through
/// `L_21 = -det hatL + hatL_11' - hatL_11 hatL_12'/hatL_12` and
/// `L_22 = Tr hatL + hatL_12'/hatL_12`.
pub fn oper_transform<R: Ring>(hatl: &LaxMat<R>) -> Result<OperL<R>, ExactError> {
    let [[a, b], [_, d]] = poly_entries(hatl)?;
    let det = hatl.det().poly_coeffs()?;
    let db = upoly::deriv(&b);
    let l21 = upoly::sub(&upoly::mul(&upoly::sub(&upoly::deriv(&a), &det), &b), &upoly::mul(&a, &db));
    let l22 = upoly::add(&upoly::mul(&upoly::add(&a, &d), &b), &db);
    Ok(OperL { l21: RatFn { num: l21, den: b.clone() }, l22: RatFn { num: l22, den: b } })
}

/// `Pi (L G - G' - G hatL)`, entrywise dense; zero when `Psi = G hatPsi`
/// carries `d/dlambda - hatL` to `d/dlambda - L`.
pub fn gauge_residual<R: Ring>(l: &OperL<R>, g: &[[Vec<R>; 2]; 2], hatl: &LaxMat<R>) -> Result<[[Vec<R>; 2]; 2], ExactError> {
    // every denominator is Pi = G_22
    let pi = &g[1][1];
    assert!(l.l21.den == *pi && l.l22.den == *pi, "expected denominators prod (lambda - q_j)");
    let pl = [[vec![], pi.clone()], [l.l21.num.clone(), l.l22.num.clone()]];
    let h = poly_entries(hatl)?;
    let mut out: [[Vec<R>; 2]; 2] = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = vec![];
            for k in 0..2 {
                acc = upoly::add(&acc, &upoly::mul(&pl[i][k], &g[k][j]));
                acc = upoly::sub(&acc, &upoly::mul(pi, &upoly::mul(&g[i][k], &h[k][j])));
            }
            acc = upoly::sub(&acc, &upoly::mul(pi, &upoly::deriv(&g[i][j])));
            out[i][j] = upoly::trim(acc);
        }
    }
    Ok(out)
}

/// The symbol `X` of the normalisation at infinity: the `lambda^g`
/// coefficient of `hatL_21`.
pub fn x_hook<R: Ring>(hatl: &LaxMat<R>, g: usize) -> Result<R, ExactError> {
    hatl.e[1][0].coeff(g as i64)
}

/// `hatL = E_21 lambda^{g+1} + (0, 1; X, 0) lambda^g + O(lambda^{g-1})`
/// and `Tr hatL = 0`.
pub fn is_normalized<R: Ring>(hatl: &LaxMat<R>, g: usize) -> Result<bool, ExactError> {
    let [[a, b], [c, d]] = poly_entries(hatl)?;
    let g1 = g + 1;
    Ok(upoly::trim(upoly::add(&a, &d)).is_empty()
        && a.len() <= g
        && b.len() == g1
        && b[g] == R::one()
        && c.len() == g + 2
        && c[g1] == R::one())
}

/// The half-integer coefficients of `sqrt(-det hatL)`: leading
/// `lambda^{g+1/2}` with coefficient 1, then `t_{inf,2k+1}/2` at
/// `lambda^{k-1/2}` for `0 <= k <= g-1`. Integer powers must be absent.
/// The `lambda^{-1}` coefficient is not compared. Returns the first
/// mismatch as `(twice the exponent, expected, found)`.
pub fn eigen_halfinteger_check<R: Ring>(
    hatl: &LaxMat<R>,
    times: &IrregularTimes<R>,
) -> Result<Option<(i64, R, R)>, ExactError> {
    let g = times.g as i64;
    let y = hatl.det().neg().sqrt(-3)?;
    if let Some((k2, c)) = y.terms2().find(|(k2, c)| k2 % 2 == 0 && !c.is_zero()) {
        return Ok(Some((k2, R::zero(), c.clone())));
    }
    let lead = y.coeff2(2 * g + 1)?;
    if lead != R::one() {
        return Ok(Some((2 * g + 1, R::one(), lead)));
    }
    let half = crate::exact::rat(1, 2);
    for k in 0..g {
        let want = times.get(2 * k + 1).scale(&half);
        let got = y.coeff2(2 * k - 1)?;
        if want != got {
            return Ok(Some((2 * k - 1, want, got)));
        }
    }
    Ok(None)
}

/// Entrywise equality of two polynomial Lax matrices.
pub fn same_matrix<R: Ring>(a: &LaxMat<R>, b: &LaxMat<R>) -> bool {
    a.sub(b).is_zero()
}

/// `(i, j, lambda-power)` of the first differing coefficient.
pub fn first_difference<R: Ring>(a: &LaxMat<R>, b: &LaxMat<R>) -> Option<(usize, usize, i64, R, R)> {
    let d = a.sub(b);
    for i in 0..2 {
        for j in 0..2 {
            if let Some((k2, _)) = d.e[i][j].terms2().next() {
                let e = k2 / 2;
                let av = a.e[i][j].coeff(e).unwrap_or_else(|_| R::zero());
                let bv = b.e[i][j].coeff(e).unwrap_or_else(|_| R::zero());
                return Some((i, j, e, av, bv));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, Atom, MultiPoly, Rational};
    use crate::sample::Sampler;

    fn point(q: &[i64], p: &[Rational], t: &[Rational]) -> OperPoint<Rational> {
        OperPoint::new(q.iter().map(|&x| int(x)).collect(), p.to_vec(), IrregularTimes::new(q.len(), t.to_vec()))
    }

    pub(crate) fn sample(g: usize, seed: u64, trial: u64) -> OperPoint<Rational> {
        let mut s = Sampler::new(seed, trial);
        let q = s.distinct_small_ints(g);
        let p = s.small_rationals(g);
        let t = s.small_rationals(g);
        OperPoint::new(q, p, IrregularTimes::new(g, t))
    }

    #[test]
    fn genus_one_h_inf() {
        let q = MultiPoly::atom(Atom::OperQ(1));
        let p = MultiPoly::atom(Atom::OperP(1));
        let t1 = MultiPoly::atom(Atom::ITime(1));
        let pt = OperPoint::new(vec![q.clone()], vec![p.clone()], IrregularTimes::new(1, vec![t1.clone()]));
        let h = pt.h_inf().unwrap();
        assert_eq!(h, vec![&p * &p - q.pow(3) - &t1 * &q]);
        assert_eq!(pt.ham(1).unwrap(), h[0]);
    }

    #[test]
    fn genus_two_vandermonde_resubstitution() {
        let pt = point(&[1, 2], &[rat(3, 2), int(-1)], &[int(2), rat(1, 3)]);
        let h = pt.h_inf().unwrap();
        let p2 = pt.times.p2_coeffs();
        for i in 0..2 {
            let j = 1 - i;
            let b = &pt.p[i] * &pt.p[i] + upoly::eval(&p2, &pt.q[i]) + (&pt.p[j] - &pt.p[i]) / (&pt.q[i] - &pt.q[j]);
            assert_eq!(&h[0] + &h[1] * &pt.q[i], b);
        }
    }

    #[test]
    fn coincident_roots_error() {
        let pt = point(&[1, 1], &[int(1), int(2)], &[int(0), int(0)]);
        assert_eq!(pt.h_inf(), Err(CoordError::Coincident(0, 1)));
        assert!(pt.oper_l().is_err());
    }

    #[test]
    fn lagrange_q_interpolates() {
        for g in 1..=4 {
            let pt = sample(g, 5, 0);
            let q = pt.q_poly().unwrap();
            for i in 0..g {
                assert_eq!(upoly::eval(&q, &pt.q[i]), -pt.p[i].clone());
            }
        }
    }

    #[test]
    fn genus_one_oper_l21() {
        // L_21 = lambda^3 + t_1 lambda + H_{inf,0} - p/(lambda - q)
        let pt = point(&[2], &[int(3)], &[int(5)]);
        let h0 = pt.h_inf().unwrap()[0].clone();
        let l = pt.oper_l().unwrap();
        let poly = vec![h0, int(5), int(0), int(1)];
        let num = upoly::sub(&upoly::mul(&poly, &[int(-2), int(1)]), &[int(3)]);
        assert!(l.l21.same_as(&RatFn { num, den: vec![int(-2), int(1)] }));
    }

    #[test]
    fn gauge_consistency() {
        for g in 1..=3 {
            for trial in 0..20 {
                let pt = sample(g, 7, trial);
                let hat = pt.geometric_hatl().unwrap();
                let l = pt.oper_l().unwrap();
                assert!(oper_transform(&hat).unwrap().same_as(&l), "g={g} trial={trial}");
                let res = gauge_residual(&l, &pt.gauge_g().unwrap(), &hat).unwrap();
                assert!(res.iter().flatten().all(|e| e.is_empty()), "g={g} trial={trial}: {res:?}");
            }
        }
    }

    #[test]
    fn geometric_shape_and_det() {
        for g in 1..=4 {
            for trial in 0..5 {
                let pt = sample(g, 9, trial);
                let hat = pt.geometric_hatl().unwrap();
                assert!(is_normalized(&hat, g).unwrap());
                let e1: Rational = pt.q.iter().sum();
                assert_eq!(x_hook(&hat, g).unwrap(), e1);
                assert!(pt.det_expansion_residual(&hat).unwrap().is_empty());
                assert_eq!(eigen_halfinteger_check(&hat, &pt.times).unwrap(), None);
            }
        }
    }

    #[test]
    fn ham_permutation_invariant() {
        let pt = sample(3, 4, 1);
        let swapped = OperPoint::new(
            vec![pt.q[2].clone(), pt.q[0].clone(), pt.q[1].clone()],
            vec![pt.p[2].clone(), pt.p[0].clone(), pt.p[1].clone()],
            pt.times.clone(),
        );
        for k in 1..=3 {
            assert_eq!(pt.ham(k).unwrap(), swapped.ham(k).unwrap());
        }
    }

    #[test]
    fn classical_pi_equations() {
        use crate::exact::Dual;
        // q' = dH/dp = 2p and p' = -dH/dq = 3q^2 + t_1 at g = 1
        let (q0, p0, t1) = (rat(3, 2), rat(-2, 3), rat(5, 7));
        let q = Dual::variable(q0.clone(), 0, 2);
        let p = Dual::variable(p0.clone(), 1, 2);
        let pt = OperPoint::new(vec![q], vec![p], IrregularTimes::new(1, vec![Dual::constant(t1.clone())]));
        let h = pt.ham(1).unwrap();
        assert_eq!(h.deriv(1), &p0 * int(2));
        assert_eq!(-h.deriv(0), int(3) * &q0 * &q0 + t1);
    }
}
