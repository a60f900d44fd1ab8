//! Irregular times under the canonical trivial-time choice, the polynomial
//! `P_2` they determine, and the `nu`-coefficients of the odd deformation
//! directions.

use crate::exact::{rat, Ring};
use crate::minimal::{CCoeffs, ToeplitzC};

/// `t_{inf,1}, t_{inf,3}, ..., t_{inf,2g-1}` at genus `g` (so `r_inf = g+3`).
/// The remaining times are fixed: `t_{2g+1} = 0`, `t_{2g+3} = 2`, and every
/// even time vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct IrregularTimes<R> {
    pub g: usize,
    /// `t[i]` is `t_{inf,2i+1}`.
    pub t: Vec<R>,
}

impl<R: Ring> IrregularTimes<R> {
    pub fn new(g: usize, t: Vec<R>) -> Self {
        assert!(g >= 1, "genus must be positive");
        assert_eq!(t.len(), g, "expected t_1..t_(2g-1)");
        IrregularTimes { g, t }
    }

    pub fn r_inf(&self) -> usize {
        self.g + 3
    }

    /// `t_{inf,k}` for any `k >= 0`, including the fixed ones.
    pub fn get(&self, k: i64) -> R {
        let g = self.g as i64;
        if k <= 0 || k % 2 == 0 {
            return R::zero();
        }
        if k == 2 * g + 3 {
            return R::from_int(2);
        }
        self.t.get(((k - 1) / 2) as usize).cloned().unwrap_or_else(R::zero)
    }

    /// Shift `t_{inf,1}` by `dx`.
    pub fn shift_t1(&self, dx: &R) -> Self {
        let mut t = self.t.clone();
        t[0] = t[0].plus(dx);
        IrregularTimes { g: self.g, t }
    }

    /// Dense coefficients `P^(2)_{inf,k}` for `k = 0..=2g+2`; nonzero only
    /// for `g <= k <= 2g+1`.
    pub fn p2_coeffs(&self) -> Vec<R> {
        let r = self.r_inf() as i64;
        let t = |k: i64| self.get(k);
        let quarter = rat(1, 4);
        let mut c = vec![R::zero(); 2 * self.g + 3];
        c[(2 * r - 5) as usize] = R::from_int(-1);
        for k in r - 2..=2 * r - 7 {
            let mut quad = R::zero();
            for m in k - r + 6..=r - 3 {
                quad = quad.plus(&t(2 * m - 1).times(&t(2 * k - 2 * m + 5)));
            }
            c[k as usize] = t(2 * k - 2 * r + 7).plus(&quad.scale(&quarter)).negate();
        }
        let mut quad = R::zero();
        for m in 3..=r - 3 {
            quad = quad.plus(&t(2 * m - 1).times(&t(2 * r - 2 * m - 1)));
        }
        c[(r - 3) as usize] = t(1).plus(&quad.scale(&quarter)).negate();
        c
    }

    /// The `c_{2l-1}` attached to these times, `c_{2l-1} = t_{inf,2l+1}/2`.
    /// They agree with the minimal-model coefficients under the time map.
    pub fn ccoeffs(&self) -> CCoeffs<R> {
        let half = rat(1, 2);
        CCoeffs { g: self.g, c: (0..=self.g as i64 + 1).map(|l| self.get(2 * l + 1).scale(&half)).collect() }
    }

    /// `nu^(e_{2k-1})_{inf,1..g}` from the lower-triangular system with
    /// diagonal 2 and right-hand side `2/(2k-1)` in row `g+1-k`.
    pub fn nu(&self, k: usize) -> Vec<R> {
        assert!(k >= 1 && k <= self.g, "direction e_(2k-1) needs 1 <= k <= g");
        // dividing the system by 2 gives C(s) nu = e_{g-k} / (2k-1)
        let mut rhs = vec![R::zero(); self.g];
        rhs[self.g - k] = R::from_rational(rat(1, 2 * k as i64 - 1));
        ToeplitzC::c(&self.ccoeffs()).solve(&rhs)
    }

    /// The `nu` matrix: 2 on the diagonal, `t_{inf,2g+1-2d}` on the
    /// `d`-th subdiagonal.
    pub fn nu_matrix(&self) -> Vec<Vec<R>> {
        let c = ToeplitzC::c(&self.ccoeffs());
        (0..self.g).map(|i| (0..self.g).map(|j| c.entry(i, j).scale(&rat(2, 1))).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, upoly, Atom, MultiPoly, Rational};

    fn sym_times(g: usize) -> IrregularTimes<MultiPoly> {
        IrregularTimes::new(g, (0..g).map(|i| MultiPoly::atom(Atom::ITime(2 * i as u16 + 1))).collect())
    }

    #[test]
    fn p2_genus_one() {
        let t = sym_times(1);
        let t1 = MultiPoly::atom(Atom::ITime(1));
        let c = t.p2_coeffs();
        assert_eq!(c, vec![MultiPoly::zero(), -t1, MultiPoly::zero(), MultiPoly::int(-1), MultiPoly::zero()]);
    }

    #[test]
    fn p2_shape() {
        for g in 1..=5 {
            let c = sym_times(g).p2_coeffs();
            assert_eq!(c[2 * g + 1], MultiPoly::int(-1));
            assert!(c[2 * g].is_zero());
            assert!(c[2 * g + 2].is_zero());
            assert!(c[..g].iter().all(|x| x.is_zero()));
        }
        // g = 2: P_2 = -lambda^5 - t_3 lambda^3 - t_1 lambda^2
        let c = sym_times(2).p2_coeffs();
        let t1 = MultiPoly::atom(Atom::ITime(1));
        let t3 = MultiPoly::atom(Atom::ITime(3));
        assert_eq!(c[2], -t1);
        assert_eq!(c[3], -t3);
    }

    #[test]
    fn nu_genus_one_and_shape() {
        let t = IrregularTimes::new(1, vec![int(5)]);
        assert_eq!(t.nu(1), vec![int(1)]);
        for g in 2..=5 {
            let t = IrregularTimes::new(g, (1..=g as i64).map(|i| Rational::new(i.into(), 3.into())).collect());
            let m = t.nu_matrix();
            for (i, row) in m.iter().take(2).enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(*v, if i == j { int(2) } else { int(0) });
                }
            }
            // e_1 always picks the last H
            let mut last = vec![int(0); g];
            last[g - 1] = int(1);
            assert_eq!(t.nu(1), last);
            for k in 1..=g {
                let nu = t.nu(k);
                let lhs: Vec<Rational> = m.iter().map(|row| row.iter().zip(&nu).map(|(a, b)| a * b).sum()).collect();
                let mut rhs = vec![int(0); g];
                rhs[g - k] = Rational::new(2.into(), (2 * k as i64 - 1).into());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn p2_quadratic_terms_from_genus_four() {
        let c = sym_times(4).p2_coeffs();
        let t = |k: u16| MultiPoly::atom(Atom::ITime(k));
        let q = |a: MultiPoly| a.scale(&rat(1, 4));
        assert_eq!(c[7], -t(7));
        assert_eq!(c[6], -t(5));
        assert_eq!(c[5], -(t(3) + q(t(7).pow(2))));
        assert_eq!(c[4], -(t(1) + q(t(5) * t(7)).scale(&int(2))));
        // g = 3 keeps a t_5^2/4 in the lambda^3 coefficient
        let c = IrregularTimes::new(3, vec![int(1), int(2), int(3)]).p2_coeffs();
        assert_eq!(upoly::trim(c), vec![int(0), int(0), int(0), rat(-13, 4), int(-2), int(-3), int(0), int(-1)]);
    }
}
