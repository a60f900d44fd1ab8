//! Spectral Darboux coordinates `(lambda_j, mu_j)` and the corrected
//! Hamiltonians `K_{2k-1}` evaluated from coordinates alone.
//!
//! The roots `lambda_j` are free rational inputs (they are generically
//! irrational for a rational jet, so no root finding is attempted). The
//! momenta and times may live in any coefficient ring, which gives a
//! symbolic variant over `MultiPoly` for free.

use thiserror::Error;

use super::spectral::{beta_n, i0_full, i0_tilde, spectral_data_from, ToeplitzC};
use super::wave::{CCoeffs, LaxMat};
use crate::exact::{upoly, ExactError, LambdaSeries, Mat2, Rational, Ring};
use crate::sample::Sampler;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoordError {
    #[error("coordinates {0} and {1} coincide")]
    Coincident(usize, usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A point `(lambda, mu; s)` of the genus-`g` phase space.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralPoint<R> {
    pub lambdas: Vec<Rational>,
    pub mus: Vec<R>,
    pub cc: CCoeffs<R>,
}

/// `prod_{i != j} (lambda_j - lambda_i)`.
pub fn pi_prod(lambdas: &[Rational], j: usize) -> Result<Rational, CoordError> {
    let mut p = Rational::one();
    for (i, li) in lambdas.iter().enumerate() {
        if i != j {
            let d = &lambdas[j] - li;
            if d.is_zero() {
                return Err(CoordError::Coincident(i.min(j), i.max(j)));
            }
            p *= d;
        }
    }
    Ok(p)
}

/// Lagrange basis polynomial `l_j` with `l_j(lambda_i) = delta_ij`, dense.
pub fn lagrange_basis(lambdas: &[Rational], j: usize) -> Result<Vec<Rational>, CoordError> {
    let others: Vec<Rational> =
        lambdas.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, l)| l.clone()).collect();
    let inv = pi_prod(lambdas, j)?.recip();
    Ok(upoly::scale(&upoly::from_roots(&others), &inv))
}

/// The polynomial of degree `< g` taking value `values[j]` at `lambda_j`.
pub fn interpolate<R: Ring>(lambdas: &[Rational], values: &[R]) -> Result<Vec<R>, CoordError> {
    let mut acc: Vec<R> = vec![];
    for (j, v) in values.iter().enumerate() {
        let lj: Vec<R> = lagrange_basis(lambdas, j)?.into_iter().map(R::from_rational).collect();
        acc = upoly::add(&acc, &upoly::scale(&lj, v));
    }
    Ok(acc)
}

fn lift<R: Ring>(p: &[Rational]) -> Vec<R> {
    p.iter().cloned().map(R::from_rational).collect()
}

fn eval_at<R: Ring>(p: &[R], x: &Rational) -> R {
    upoly::eval(p, &R::from_rational(x.clone()))
}

impl<R: Ring> SpectralPoint<R> {
    pub fn g(&self) -> usize {
        self.lambdas.len()
    }

    /// `beta_g(lambda) = prod (lambda - lambda_j)`.
    pub fn beta(&self) -> Vec<Rational> {
        upoly::from_roots(&self.lambdas)
    }

    /// `R~_0..R~_g` recovered from `beta` through `C~(s)^{-1}`.
    pub fn r_tilde(&self) -> Vec<Vec<R>> {
        let g = self.g();
        let beta: Vec<R> = lift(&self.beta());
        let bn: Vec<Vec<R>> = (0..=g).map(|n| beta_n(&beta, g, n)).collect();
        ToeplitzC::c_tilde(&self.cc).solve_polys(&bn)
    }

    fn interpolation_sum<F: Fn(usize) -> R>(&self, weight: F, poly: &[R]) -> Result<R, CoordError> {
        let mut acc = R::zero();
        for (j, l) in self.lambdas.iter().enumerate() {
            let w = weight(j).times(&eval_at(poly, l));
            acc = acc.plus(&w.scale(&pi_prod(&self.lambdas, j)?.recip()));
        }
        Ok(acc)
    }

    /// `sum_j (mu_j^2 - I_0(lambda_j)) R~_{k-1}(lambda_j) / prod_{i != j}(lambda_j - lambda_i)`
    /// with the full `I_0`; this is the spectral Hamiltonian `H_k`.
    pub fn h_coordinate(&self, k: usize) -> Result<R, CoordError> {
        self.h_sum(k, &i0_full(&self.cc))
    }

    /// The same sum taken with the Casimir `I~_0`; it exceeds `H_k` by the
    /// purely time-dependent `[C^{-1} A]_k`.
    pub fn h_coordinate_casimir(&self, k: usize) -> Result<R, CoordError> {
        self.h_sum(k, &i0_tilde(&self.cc))
    }

    fn h_sum(&self, k: usize, i0: &[R]) -> Result<R, CoordError> {
        let rt = self.r_tilde();
        self.interpolation_sum(|j| self.mus[j].times(&self.mus[j]).minus(&eval_at(i0, &self.lambdas[j])), &rt[k - 1])
    }

    /// `sum_j mu_j R~'_{k-1}(lambda_j) / prod_{i != j}(lambda_j - lambda_i)`.
    pub fn correction(&self, k: usize) -> Result<R, CoordError> {
        let rt = self.r_tilde();
        self.interpolation_sum(|j| self.mus[j].clone(), &upoly::deriv(&rt[k - 1]))
    }

    /// `-sum_j mu_j beta'_{k-1}(lambda_j) / prod_{i != j}(lambda_j - lambda_i)`.
    pub fn s_term(&self, k: usize) -> Result<R, CoordError> {
        let beta: Vec<R> = lift(&self.beta());
        let bk = beta_n(&beta, self.g(), k - 1);
        Ok(self.interpolation_sum(|j| self.mus[j].clone(), &upoly::deriv(&bk))?.negate())
    }

    /// The Lax matrix `(alpha, beta; gamma, -alpha)` with the given spectral
    /// coordinates and Casimir: `alpha(lambda_j) = mu_j`, `-det = I~_0 + O(lambda^{g-1})`.
    pub fn lax(&self) -> Result<LaxMat<R>, CoordError> {
        let beta: Vec<R> = lift(&self.beta());
        let alpha = interpolate(&self.lambdas, &self.mus)?;
        let it = i0_tilde(&self.cc);
        let low: Vec<R> = self
            .lambdas
            .iter()
            .zip(&self.mus)
            .map(|(l, m)| m.times(m).minus(&eval_at(&it, l)))
            .collect();
        let h = upoly::add(&it, &interpolate(&self.lambdas, &low)?);
        let gamma = upoly::div_exact(&upoly::sub(&h, &upoly::mul(&alpha, &alpha)), &beta)?;
        let a = LambdaSeries::from_poly(alpha);
        Ok(Mat2::new(a.clone(), LambdaSeries::from_poly(beta), LambdaSeries::from_poly(gamma), a.neg()))
    }

    /// `H_1..H_g` through the square root of `-det` of the reconstructed matrix.
    pub fn h_series(&self) -> Result<Vec<R>, CoordError> {
        Ok(spectral_data_from(&self.lax()?, &self.cc)?.hs)
    }

    /// `f_{2k-1} = [C^{-1} A]_k`, a function of the times only.
    pub fn time_term(&self) -> Vec<R> {
        let mut a = super::spectral::a_convolution(&self.cc);
        // row k pairs with lambda^{g-k}
        a.reverse();
        ToeplitzC::c(&self.cc).solve(&a)
    }
}

/// `K_{2k-1} = H_k - sum_j mu_j R~'_{k-1}(lambda_j) / prod_{i != j}(lambda_j - lambda_i)`,
/// with `H_k` from the coordinate-only path.
pub fn k_hamiltonian<R: Ring>(p: &SpectralPoint<R>, k: usize) -> Result<R, CoordError> {
    assert!(k >= 1 && k <= p.g(), "k out of range");
    Ok(p.h_coordinate(k)?.minus(&p.correction(k)?))
}

/// `K_{2k-1}` through the series path, for cross-checking.
pub fn k_hamiltonian_series<R: Ring>(p: &SpectralPoint<R>, k: usize) -> Result<R, CoordError> {
    Ok(p.h_series()?[k - 1].minus(&p.correction(k)?))
}

/// Left side of the correction-term lemma:
/// `Res_{lambda -> inf} lambda^{-(g+1-k)} sum_j mu_j/(lambda - lambda_j) l_j(lambda)`.
pub fn correction_residue_lhs<R: Ring>(lambdas: &[Rational], mus: &[R], k: usize) -> Result<R, CoordError> {
    let g = lambdas.len();
    let depth2 = -2 * (g as i64 + 3);
    let mut acc = R::zero();
    for (j, mu) in mus.iter().enumerate() {
        let lj = LambdaSeries::from_poly(lift::<R>(&lagrange_basis(lambdas, j)?));
        let pole = LambdaSeries::from_poly(vec![R::from_rational(-lambdas[j].clone()), R::one()]).inverse(depth2)?;
        let term = lj.mul(&pole).shift(-((g + 1 - k) as i64));
        acc = acc.plus(&term.residue()?.times(mu));
    }
    Ok(acc)
}

/// Right side: `-sum_j mu_j beta'_{k-1}(lambda_j) / prod_{i != j}(lambda_j - lambda_i)`.
pub fn correction_residue_rhs<R: Ring>(lambdas: &[Rational], mus: &[R], k: usize) -> Result<R, CoordError> {
    let cc = CCoeffs::<R> { g: lambdas.len(), c: vec![] };
    SpectralPoint { lambdas: lambdas.to_vec(), mus: mus.to_vec(), cc }.s_term(k)
}

/// A seeded spectral point: distinct small integer roots, small rational
/// momenta and times.
pub fn sample_point(g: usize, sampler: &mut Sampler) -> SpectralPoint<Rational> {
    let lambdas = sampler.distinct_small_ints(g);
    let mus = sampler.small_rationals(g);
    let x = sampler.small_rational();
    let s = sampler.small_rationals(g.saturating_sub(1));
    SpectralPoint { lambdas, mus, cc: CCoeffs::from_times(g, x, &s) }
}

/// The correction-term lemma at `trials` seeded points for every `k <= g`.
/// Returns the first failing `(trial, k, lhs, rhs)`.
pub fn correction_residue_check(
    g: usize,
    seed: u64,
    trials: u64,
) -> Result<Option<(u64, usize, Rational, Rational)>, CoordError> {
    for t in 0..trials {
        if let Some(w) = correction_residue_trial(g, seed, t)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn correction_residue_trial(
    g: usize,
    seed: u64,
    t: u64,
) -> Result<Option<(u64, usize, Rational, Rational)>, CoordError> {
    let p = sample_point(g, &mut Sampler::new(seed, t));
    for k in 1..=g {
        let lhs = correction_residue_lhs(&p.lambdas, &p.mus, k)?;
        let rhs = correction_residue_rhs(&p.lambdas, &p.mus, k)?;
        if lhs != rhs {
            return Ok(Some((t, k, lhs, rhs)));
        }
    }
    Ok(None)
}
