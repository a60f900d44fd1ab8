//! Wave matrices: the formal series `U(lambda)`, the polynomial truncations
//! `U_{2n+1}(lambda)` and the Lax matrix `A^(g)(lambda)`.

use std::collections::BTreeMap;

use crate::diffjet::{c_coeff, d_x_series, s, u, DiffJetError, DiffPoly, LenardTable};
use crate::exact::{rat, Atom, ExactError, LambdaSeries, Mat2, MultiPoly, Rational, Ring};

/// A 2x2 matrix of lambda-series. The coefficient ring is the type
/// parameter: `DiffPoly` for jet-level objects, `Rational` after
/// evaluation, `MultiPoly` in Darboux atoms for coordinate-built matrices.
pub type LaxMat<R = DiffPoly> = Mat2<LambdaSeries<R>>;

/// The string-equation coefficients `c_{2l-1}` for `l = 0..=g+1`, with
/// `c_{-1} = x/2`, `c_{2g-1} = 0` and `c_{2g+1} = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CCoeffs<R> {
    pub g: usize,
    /// `c[l]` is `c_{2l-1}`.
    pub c: Vec<R>,
}

impl CCoeffs<DiffPoly> {
    /// Coefficients in the time atoms `x = s_1, s_3, ...`.
    pub fn symbolic(g: usize) -> Self {
        let mut c = vec![s(0).scale(&rat(1, 2))];
        c.extend((1..=g + 1).map(|l| c_coeff(g, l)));
        CCoeffs { g, c }
    }
}

impl<R: Ring> CCoeffs<R> {
    /// From `x` and `s_3, ..., s_{2g-1}` (`s_odd[i]` is `s_{2i+3}`).
    pub fn from_times(g: usize, x: R, s_odd: &[R]) -> Self {
        assert_eq!(s_odd.len(), g.saturating_sub(1), "expected s_3..s_(2g-1)");
        let mut c = vec![x.scale(&rat(1, 2))];
        for l in 1..g {
            c.push(s_odd[l - 1].scale(&rat(2 * l as i64 + 1, 2)));
        }
        c.push(R::zero());
        c.push(R::one());
        CCoeffs { g, c }
    }

    /// `c_{2l-1}`; labels outside `0..=g+1` give zero.
    pub fn get(&self, l: i64) -> R {
        if l < 0 {
            return R::zero();
        }
        self.c.get(l as usize).cloned().unwrap_or_else(R::zero)
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> CCoeffs<S> {
        CCoeffs { g: self.g, c: self.c.iter().map(f).collect() }
    }
}

fn lenard_capacity(table: &LenardTable, need: usize) -> Result<(), DiffJetError> {
    if need > table.lmax() {
        return Err(DiffJetError::OutOfRange { l: need, cap: table.lmax() });
    }
    Ok(())
}

/// `U(lambda) = (A, B; C, -A)` with `B = sum_k R_{2k-1} lambda^{-k}` kept
/// down to `lambda^{-depth}`, `A = -B'/2` and `C = -B''/2 + (lambda - u) B`.
pub fn build_u(table: &LenardTable, depth: usize) -> Result<LaxMat, DiffJetError> {
    lenard_capacity(table, depth)?;
    let b = table.generating_series().truncate2(-2 * depth as i64);
    let b1 = d_x_series(&b);
    let a = b1.scale(&rat(-1, 2));
    let lam_minus_u = LambdaSeries::from_poly(vec![-u(0), MultiPoly::one()]);
    let c = lam_minus_u.mul(&b).sub(&d_x_series(&b1).scale(&rat(1, 2)));
    Ok(Mat2::new(a.clone(), b, c, a.neg()))
}

/// `det U(lambda)` on its certified range. With the sign conventions fixed
/// by `U_1 = (0, 1; lambda - u, 0)` this is exactly `-lambda`.
pub fn det_u(table: &LenardTable, depth: usize) -> Result<LambdaSeries<DiffPoly>, DiffJetError> {
    Ok(build_u(table, depth)?.det())
}

/// `U_{2n+1} = [lambda^n U]_+ - E_21 R_{2n+1}`.
pub fn build_u2n1(table: &LenardTable, n: usize) -> Result<LaxMat, DiffJetError> {
    let full = build_u(table, n + 1)?;
    let mut m = full.try_map(|e| e.shift(n as i64).plus_part())?;
    m.e[1][0] = m.e[1][0].sub(&LambdaSeries::constant(table.r(n + 1).clone()));
    Ok(m)
}

/// All of `U_1, U_3, ..., U_{2n+1}`.
pub fn build_u_family(table: &LenardTable, n: usize) -> Result<Vec<LaxMat>, DiffJetError> {
    (0..=n).map(|k| build_u2n1(table, k)).collect()
}

/// `A^(g) = sum_{l=1}^{g+1} c_{2l-1} U_{2l-1}`.
pub fn build_ag(table: &LenardTable, g: usize) -> Result<LaxMat, DiffJetError> {
    assert!(g >= 1, "genus must be positive");
    let cc = CCoeffs::symbolic(g);
    let mut acc = LaxMat::zero();
    for l in 1..=g + 1 {
        let c = cc.get(l as i64);
        if c.is_zero() {
            continue;
        }
        let un = build_u2n1(table, l - 1)?;
        acc = acc.add(&un.map(|e| e.mul_coeff(&c)));
    }
    Ok(acc)
}

/// Evaluate every coefficient at a rational assignment of jets and times.
pub fn eval_lax(m: &LaxMat, vals: &BTreeMap<Atom, Rational>) -> Result<LaxMat<Rational>, ExactError> {
    m.try_map(|e| e.try_map(|c| c.eval(vals)))
}

/// Apply a coefficientwise map to every entry.
pub fn map_coeffs<R: Ring, S: Ring, F: Fn(&R) -> S>(m: &LaxMat<R>, f: F) -> LaxMat<S> {
    m.map(|e| e.map(&f))
}

/// `d/dlambda` entrywise.
pub fn d_lambda<R: Ring>(m: &LaxMat<R>) -> LaxMat<R> {
    m.map(|e| e.deriv_lambda())
}

/// Polynomial entries as dense coefficient vectors.
pub fn poly_entries<R: Ring>(m: &LaxMat<R>) -> Result<[[Vec<R>; 2]; 2], ExactError> {
    Ok([
        [m.e[0][0].poly_coeffs()?, m.e[0][1].poly_coeffs()?],
        [m.e[1][0].poly_coeffs()?, m.e[1][1].poly_coeffs()?],
    ])
}

/// A matrix from dense polynomial entries.
pub fn from_poly_entries<R: Ring>(e: [[Vec<R>; 2]; 2]) -> LaxMat<R> {
    let [[a, b], [c, d]] = e;
    Mat2::new(
        LambdaSeries::from_poly(a),
        LambdaSeries::from_poly(b),
        LambdaSeries::from_poly(c),
        LambdaSeries::from_poly(d),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffjet::d_x;

    fn c(n: i64, d: i64) -> MultiPoly {
        MultiPoly::constant(rat(n, d))
    }

    fn poly(v: Vec<MultiPoly>) -> LambdaSeries<MultiPoly> {
        LambdaSeries::from_poly(v)
    }

    #[test]
    fn det_u_is_minus_lambda() {
        let t = LenardTable::new(7);
        let m = build_u(&t, 6).unwrap();
        let det = m.det();
        let f = det.floor2().unwrap();
        assert!(f <= -10, "watermark too high: {f}");
        // the sign is the one forced by U_1 = (0, 1; lambda - u, 0)
        assert_eq!(det.terms2().count(), 1);
        assert_eq!(det.coeff(1).unwrap(), MultiPoly::int(-1));
    }

    #[test]
    fn a_is_minus_half_dx_b() {
        let t = LenardTable::new(4);
        let m = build_u(&t, 4).unwrap();
        assert_eq!(m.e[0][0], m.e[0][1].map(|x| d_x(x).scale(&rat(-1, 2))));
        assert_eq!(m.e[0][1].coeff(-1).unwrap(), u(0).scale(&rat(1, 2)));
    }

    #[test]
    fn reference_u1_u3() {
        let t = LenardTable::new(4);
        let u1 = build_u2n1(&t, 0).unwrap();
        let expect1 = Mat2::new(poly(vec![]), poly(vec![c(1, 1)]), poly(vec![-u(0), c(1, 1)]), poly(vec![]));
        assert_eq!(u1, expect1);
        let u3 = build_u2n1(&t, 1).unwrap();
        let a = poly(vec![u(1).scale(&rat(-1, 4))]);
        let b = poly(vec![u(0).scale(&rat(1, 2)), c(1, 1)]);
        let cc = poly(vec![
            -(u(0).pow(2).scale(&rat(1, 2))) - u(2).scale(&rat(1, 4)),
            u(0).scale(&rat(-1, 2)),
            c(1, 1),
        ]);
        assert_eq!(u3, Mat2::new(a.clone(), b, cc, a.neg()));
    }

    #[test]
    fn reference_u5() {
        let t = LenardTable::new(4);
        let u5 = build_u2n1(&t, 2).unwrap();
        let u0 = u(0);
        let a = poly(vec![
            (&u0 * &u(1)).scale(&rat(-3, 8)) - u(3).scale(&rat(1, 16)),
            u(1).scale(&rat(-1, 4)),
        ]);
        let b = poly(vec![u0.pow(2).scale(&rat(3, 8)) + u(2).scale(&rat(1, 8)), u0.scale(&rat(1, 2)), c(1, 1)]);
        let cc = poly(vec![
            u(4).scale(&rat(-1, 16))
                - (&u0 * &u(2)).scale(&rat(1, 2))
                - u(1).pow(2).scale(&rat(3, 8))
                - u0.pow(3).scale(&rat(3, 8)),
            (u0.pow(2) + u(2)).scale(&rat(-1, 8)),
            u0.scale(&rat(-1, 2)),
            c(1, 1),
        ]);
        assert_eq!(u5, Mat2::new(a.clone(), b, cc, a.neg()));
    }

    #[test]
    fn traceless_and_degrees() {
        let t = LenardTable::new(6);
        for n in 0..=4 {
            let m = build_u2n1(&t, n).unwrap();
            assert!(m.trace().is_zero());
            assert_eq!(m.e[1][0].top2(), Some(2 * (n as i64 + 1)));
            assert_eq!(m.e[0][1].top2(), Some(2 * n as i64));
        }
        for g in 1..=4 {
            let a = build_ag(&t, g).unwrap();
            assert!(a.trace().is_zero());
            assert_eq!(a.e[0][1].lead(), Some((2 * g as i64, &MultiPoly::one())));
            assert_eq!(a.e[1][0].lead(), Some((2 * (g as i64 + 1), &MultiPoly::one())));
        }
    }

    #[test]
    fn capacity_error() {
        let t = LenardTable::new(2);
        assert!(build_u(&t, 3).is_err());
        assert!(build_u2n1(&t, 2).is_err());
    }
}
