//! Spectral data of `A^(g)`: `h = -det A`, its square root `xi`, the
//! spectral invariants and Hamiltonians, the Toeplitz matrices relating
//! them, and the `beta`-polynomials built from `[A]_{1,2}`.

use std::collections::BTreeMap;

use super::wave::{build_ag, build_u2n1, eval_lax, CCoeffs, LaxMat};
use crate::diffjet::{u, DiffJetError, DiffPoly, LenardTable, StringReducer};
use crate::exact::{rat, upoly, Atom, ExactError, LambdaSeries, Rational, Ring};
use crate::sample::Sampler;

/// Lower-triangular Toeplitz matrix with unit diagonal, stored by its first
/// column: `col[d]` sits on the `d`-th subdiagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzC<R> {
    pub col: Vec<R>,
}

impl<R: Ring> ToeplitzC<R> {
    /// `C(s)`, size `g`: `[C]_{ij} = c_{2g+1-2(i-j)}`.
    pub fn c(cc: &CCoeffs<R>) -> Self {
        Self::with_size(cc, cc.g)
    }

    /// `C~(s)`, size `g+1`, which adds the `c_1` row.
    pub fn c_tilde(cc: &CCoeffs<R>) -> Self {
        Self::with_size(cc, cc.g + 1)
    }

    fn with_size(cc: &CCoeffs<R>, n: usize) -> Self {
        let g = cc.g as i64;
        ToeplitzC { col: (0..n as i64).map(|d| cc.get(g + 1 - d)).collect() }
    }

    pub fn size(&self) -> usize {
        self.col.len()
    }

    /// 0-based entry.
    pub fn entry(&self, i: usize, j: usize) -> R {
        if j > i {
            R::zero()
        } else {
            self.col[i - j].clone()
        }
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        (0..self.size())
            .map(|i| (0..=i).fold(R::zero(), |acc, j| acc.plus(&self.col[i - j].times(&v[j]))))
            .collect()
    }

    /// Forward substitution; exact because the diagonal is 1.
    pub fn solve(&self, rhs: &[R]) -> Vec<R> {
        let mut x: Vec<R> = Vec::with_capacity(rhs.len());
        for i in 0..self.size() {
            let mut acc = rhs[i].clone();
            for j in 0..i {
                acc = acc.minus(&self.col[i - j].times(&x[j]));
            }
            x.push(acc);
        }
        x
    }

    /// Forward substitution with polynomial right-hand sides.
    pub fn solve_polys(&self, rhs: &[Vec<R>]) -> Vec<Vec<R>> {
        let mut x: Vec<Vec<R>> = Vec::with_capacity(rhs.len());
        for i in 0..self.size() {
            let mut acc = rhs[i].clone();
            for j in 0..i {
                acc = upoly::sub(&acc, &upoly::scale(&x[j], &self.col[i - j]));
            }
            x.push(acc);
        }
        x
    }

    pub fn mul_polys(&self, v: &[Vec<R>]) -> Vec<Vec<R>> {
        (0..self.size())
            .map(|i| (0..=i).fold(vec![], |acc, j| upoly::add(&acc, &upoly::scale(&v[j], &self.col[i - j]))))
            .collect()
    }
}

/// `A_j = sum_{m=0}^{j+1} c_{2m-1} c_{2j-2m+1}` for `j = 0..g-1`: the part of
/// `I_0` below `lambda^g`, a function of the times only.
pub fn a_convolution<R: Ring>(cc: &CCoeffs<R>) -> Vec<R> {
    (0..cc.g as i64)
        .map(|j| (0..=j + 1).fold(R::zero(), |acc, m| acc.plus(&cc.get(m).times(&cc.get(j - m + 1)))))
        .collect()
}

/// The Casimir part `I~_0(lambda)`, dense, degree `2g+1`.
pub fn i0_tilde<R: Ring>(cc: &CCoeffs<R>) -> Vec<R> {
    let g = cc.g as i64;
    let mut out = vec![R::zero(); 2 * cc.g + 2];
    out[2 * cc.g + 1] = R::one();
    for k in g..=2 * g {
        out[k as usize] = (k - g..=g + 1).fold(R::zero(), |acc, m| acc.plus(&cc.get(m).times(&cc.get(k - m + 1))));
    }
    out
}

/// The full `I_0(lambda) = I~_0(lambda) + sum_j A_j lambda^j`.
pub fn i0_full<R: Ring>(cc: &CCoeffs<R>) -> Vec<R> {
    let mut out = i0_tilde(cc);
    for (j, a) in a_convolution(cc).into_iter().enumerate() {
        out[j] = out[j].plus(&a);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData<R> {
    pub g: usize,
    /// `-det A^(g)`, a polynomial of degree `2g+1`.
    pub h: LambdaSeries<R>,
    /// `I_0(lambda)`, dense.
    pub i0: Vec<R>,
    /// `I~_0(lambda)`, dense.
    pub i0_tilde: Vec<R>,
    /// `I_1..I_g`.
    pub i: Vec<R>,
    /// `H_1..H_g`, read off `xi` as `2 [xi]_{lambda^{-k-1/2}}`.
    pub hs: Vec<R>,
    /// `sqrt(h)` with leading term `+lambda^{g+1/2}`, down to `lambda^{-g-1/2}`.
    pub xi: LambdaSeries<R>,
}

impl<R: Ring> SpectralData<R> {
    /// Coefficient of `lambda^{m-1/2}` in `xi`, to be compared with `c_{2m-1}`.
    pub fn xi_coeff(&self, m: i64) -> Result<R, ExactError> {
        self.xi.coeff2(2 * m - 1)
    }

    /// `I - C(s) H`, zero when the spectral relations hold.
    pub fn toeplitz_residual(&self, cc: &CCoeffs<R>) -> Vec<R> {
        let ch = ToeplitzC::c(cc).mul_vec(&self.hs);
        self.i.iter().zip(ch).map(|(a, b)| a.minus(&b)).collect()
    }
}

/// Spectral data of a traceless polynomial Lax matrix with given `c`s.
pub fn spectral_data_from<R: Ring>(ag: &LaxMat<R>, cc: &CCoeffs<R>) -> Result<SpectralData<R>, ExactError> {
    let g = cc.g;
    let h = ag.det().neg();
    let xi = h.sqrt(-(2 * g as i64 + 1))?;
    let i0 = i0_full(cc);
    let i = (1..=g).map(|k| Ok(h.coeff((g - k) as i64)?.minus(&i0[g - k]))).collect::<Result<Vec<R>, ExactError>>()?;
    let hs = (1..=g)
        .map(|k| Ok(xi.coeff2(-2 * k as i64 - 1)?.scale(&rat(2, 1))))
        .collect::<Result<Vec<R>, ExactError>>()?;
    Ok(SpectralData { g, h, i0, i0_tilde: i0_tilde(cc), i, hs, xi })
}

/// Symbolic spectral data over differential polynomials.
pub fn spectral_data_symbolic(g: usize) -> Result<SpectralData<DiffPoly>, DiffJetError> {
    let table = LenardTable::new(g + 1);
    let ag = build_ag(&table, g)?;
    Ok(spectral_data_from(&ag, &CCoeffs::symbolic(g))?)
}

/// Spectral data at a rational assignment of `u^{(0..2g)}`, `x` and the times.
pub fn spectral_data_at(g: usize, vals: &BTreeMap<Atom, Rational>) -> Result<SpectralData<Rational>, DiffJetError> {
    let table = LenardTable::new(g + 1);
    let ag = eval_lax(&build_ag(&table, g)?, vals)?;
    let cc = CCoeffs::symbolic(g).try_map(|c| c.eval(vals))?;
    Ok(spectral_data_from(&ag, &cc)?)
}

/// Optional-assignment front end: symbolic when `at` is `None`.
pub enum Spectral {
    Symbolic(SpectralData<DiffPoly>),
    Numeric(SpectralData<Rational>),
}

pub fn spectral_data(g: usize, at: Option<&BTreeMap<Atom, Rational>>) -> Result<Spectral, DiffJetError> {
    match at {
        None => spectral_data_symbolic(g).map(Spectral::Symbolic),
        Some(v) => spectral_data_at(g, v).map(Spectral::Numeric),
    }
}

impl CCoeffs<DiffPoly> {
    pub fn try_map<S: Ring, E, F: Fn(&DiffPoly) -> Result<S, E>>(&self, f: F) -> Result<CCoeffs<S>, E> {
        Ok(CCoeffs { g: self.g, c: self.c.iter().map(f).collect::<Result<_, E>>()? })
    }
}

/// A seeded rational point on the genus-`g` string locus: random
/// `u^{(0..2g-1)}`, `x` and `s_3..s_{2g-1}`, with `u^{(2g)}` solved from the
/// string equation.
pub fn locus_point(g: usize, sampler: &mut Sampler) -> BTreeMap<Atom, Rational> {
    let mut vals = BTreeMap::new();
    for k in 0..2 * g as u16 {
        vals.insert(Atom::UJet(k), sampler.small_rational());
    }
    for l in 0..g as u16 {
        vals.insert(Atom::STime(l), sampler.small_rational());
    }
    let table = LenardTable::new(g + 1);
    let top = StringReducer::new(&table, g).reduce(&u(2 * g as u16));
    let v = top.eval(&vals).expect("all lower jets are bound");
    vals.insert(Atom::UJet(2 * g as u16), v);
    vals
}

/// `beta_g = [A^(g)]_{1,2}`, dense.
pub fn beta_g(ag: &LaxMat) -> Result<Vec<DiffPoly>, ExactError> {
    ag.e[0][1].poly_coeffs()
}

/// `beta_n^(g) = [lambda^{n-g} beta_g]_+`.
pub fn beta_n<R: Ring>(beta: &[R], g: usize, n: usize) -> Vec<R> {
    beta[g - n..].to_vec()
}

/// `R~_n(lambda) = sum_{k=0}^n R_{2k-1} lambda^{n-k}`, dense.
pub fn r_tilde(table: &LenardTable, n: usize) -> Vec<DiffPoly> {
    (0..=n).map(|i| table.r(n - i).clone()).collect()
}

/// `beta_g`, the truncations `beta_0..beta_g` and `R~_0..R~_g`.
pub type BetaFamily = (Vec<DiffPoly>, Vec<Vec<DiffPoly>>, Vec<Vec<DiffPoly>>);

/// All three pieces of the `beta` family at genus `g`.
pub fn beta_family(g: usize) -> Result<BetaFamily, DiffJetError> {
    let table = LenardTable::new(g + 1);
    let bg = beta_g(&build_ag(&table, g)?)?;
    let bn = (0..=g).map(|n| beta_n(&bg, g, n)).collect();
    let rt = (0..=g).map(|n| r_tilde(&table, n)).collect();
    Ok((bg, bn, rt))
}

/// `beta = C~(s) R~` and the coefficient formula
/// `beta_{g,n} = sum_{j=0}^n c_{2g-2j+1} R_{2n-2j-1}`, both exact.
pub fn toeplitz_relation_check(g: usize) -> Result<bool, DiffJetError> {
    let table = LenardTable::new(g + 1);
    let (bg, bn, rt) = beta_family(g)?;
    let cc = CCoeffs::symbolic(g);
    let rhs = ToeplitzC::c_tilde(&cc).mul_polys(&rt);
    let matrix_ok = bn.iter().zip(&rhs).all(|(a, b)| upoly::trim(upoly::sub(a, b)).is_empty());
    let coeff_ok = (1..=g).all(|n| {
        let formula = (0..=n).fold(DiffPoly::zero(), |acc, j| acc + &cc.get((g - j + 1) as i64) * table.r(n - j));
        bg[g - n] == formula
    });
    // the R~_n are the (1,2) entries of U_{2n+1}
    let entries_ok = (0..=g).all(|n| build_u2n1(&table, n).map(|m| m.e[0][1].poly_coeffs().ok() == Some(rt[n].clone())).unwrap_or(false));
    Ok(matrix_ok && coeff_ok && entries_ok && bg.last() == Some(&DiffPoly::one()) && bg.len() == g + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffjet::s;
    use crate::exact::MultiPoly;

    #[test]
    fn toeplitz_solve_roundtrip() {
        let cc = CCoeffs::from_times(3, rat(1, 2), &[rat(2, 3), rat(-5, 4)]);
        let c = ToeplitzC::c(&cc);
        assert_eq!(c.entry(1, 0), rat(0, 1));
        assert_eq!(c.entry(2, 0), rat(-25, 8));
        let v = vec![rat(1, 1), rat(-2, 7), rat(3, 5)];
        assert_eq!(c.solve(&c.mul_vec(&v)), v);
        let ct = ToeplitzC::c_tilde(&cc);
        assert_eq!(ct.entry(3, 0), rat(1, 1));
    }

    #[test]
    fn casimir_genus_one() {
        let cc = CCoeffs::symbolic(1);
        let z = MultiPoly::zero();
        assert_eq!(i0_tilde(&cc), vec![z.clone(), s(0), z, MultiPoly::one()]);
        assert_eq!(a_convolution(&cc), vec![MultiPoly::zero()]);
    }

    fn reduce_vec(r: &mut StringReducer, v: &[DiffPoly]) -> Vec<DiffPoly> {
        v.iter().map(|p| r.reduce(p)).collect()
    }

    #[test]
    fn xi_expansion_and_toeplitz_symbolic() {
        for g in 1..=3 {
            let sd = spectral_data_symbolic(g).unwrap();
            let cc = CCoeffs::symbolic(g);
            let mut r = StringReducer::new(&LenardTable::new(g + 1), g);
            assert_eq!(sd.h.lead(), Some((4 * g as i64 + 2, &MultiPoly::one())));
            assert!(sd.xi.terms2().all(|(k, _)| k % 2 != 0), "xi has an integer power");
            for m in 0..=g as i64 + 1 {
                assert_eq!(r.reduce(&(sd.xi_coeff(m).unwrap() - cc.get(m))), MultiPoly::zero(), "g={g} m={m}");
            }
            assert_eq!(sd.xi_coeff(0).unwrap().as_constant(), None);
            assert!(reduce_vec(&mut r, &sd.toeplitz_residual(&cc)).iter().all(|p| p.is_zero()), "g={g}");
            // h = I_0 + sum I_k lambda^{g-k} on the polynomial part
            for k in 1..=g {
                assert_eq!(sd.h.coeff((g - k) as i64).unwrap(), &sd.i0[g - k] + &sd.i[k - 1]);
            }
        }
    }

    #[test]
    fn toeplitz_numeric_genus_four() {
        let g = 4;
        let cc_sym = CCoeffs::symbolic(g);
        for trial in 0..3 {
            let vals = locus_point(g, &mut Sampler::new(7, trial));
            let sd = spectral_data_at(g, &vals).unwrap();
            let cc = cc_sym.try_map(|c| c.eval(&vals)).unwrap();
            assert!(sd.toeplitz_residual(&cc).iter().all(|x| x.is_zero()));
            assert_eq!(sd.xi_coeff(0).unwrap(), &vals[&Atom::STime(0)] / rat(2, 1));
        }
    }

    #[test]
    fn beta_relations() {
        for g in 1..=4 {
            assert!(toeplitz_relation_check(g).unwrap(), "g={g}");
        }
        let (_, _, rt) = beta_family(2).unwrap();
        assert_eq!(rt[1], vec![u(0).scale(&rat(1, 2)), MultiPoly::one()]);
    }
}
