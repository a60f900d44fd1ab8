//! The dictionary between the two sides: times, Darboux coordinates and
//! Lax matrices, spectral invariants and Hamiltonians.
//!
//! The minimal-model matrix needs a `u`-jet, which an isomonodromic point
//! does not carry. It is reconstructed by integrating the `t_1`-flow of
//! `Ham^(e_1)` as exact Taylor series in `x - t_1` and reading off
//! `u = -2 sum q_j`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::diffjet::{string_lhs, LenardTable};
use crate::exact::{int, Atom, Dual, MultiPoly, Rational, Ring, Taylor};
use crate::isomono::oper::first_difference;
use crate::isomono::{IrregularTimes, OperPoint, SymPoint};
use crate::minimal::hamiltonian::{correction_residue_lhs, k_hamiltonian, CoordError};
use crate::minimal::spectral::{a_convolution, spectral_data_from, ToeplitzC};
use crate::minimal::wave::{build_ag, eval_lax, poly_entries, CCoeffs};
use crate::minimal::SpectralPoint;
use crate::sample::Sampler;
use crate::verdict::{expect_eq, Failure, Verdict};

/// `t = D s` with `D = diag(1, 3, ..., 2g-1)`, `t_1 = s_1 = x` and
/// `t_{2g+1} = s_{2g+1} = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimeMap {
    pub g: usize,
}

impl TimeMap {
    /// Irregular times from `x` and `s_3..s_{2g-1}`.
    pub fn t_from_s<R: Ring>(&self, x: &R, s: &[R]) -> IrregularTimes<R> {
        assert_eq!(s.len() + 1, self.g, "expected s_3..s_(2g-1)");
        let mut t = vec![x.clone()];
        t.extend(s.iter().enumerate().map(|(i, v)| v.scale(&int(2 * i as i64 + 3))));
        IrregularTimes::new(self.g, t)
    }

    /// `(x, s_3..s_{2g-1})` from irregular times.
    pub fn s_from_t<R: Ring>(&self, t: &IrregularTimes<R>) -> (R, Vec<R>) {
        let s = (1..self.g).map(|i| t.t[i].scale(&Rational::new(1.into(), (2 * i as i64 + 1).into()))).collect();
        (t.t[0].clone(), s)
    }

    /// The minimal-model coefficients `c_{2l-1}(s)`.
    pub fn ccoeffs<R: Ring>(&self, t: &IrregularTimes<R>) -> CCoeffs<R> {
        let (x, s) = self.s_from_t(t);
        CCoeffs::from_times(self.g, x, &s)
    }
}

/// A seeded oper point whose times come from seeded `(x, s)`.
pub fn sample_point(g: usize, seed: u64, trial: u64) -> OperPoint<Rational> {
    let mut s = Sampler::new(seed, trial);
    let q = s.distinct_small_ints(g);
    let p = s.small_rationals(g);
    let x = s.small_rational();
    let st = s.small_rationals(g - 1);
    OperPoint::new(q, p, TimeMap { g }.t_from_s(&x, &st))
}

/// Taylor coefficients of `(q_j, p_j)(t_1 + z)` along the `t_1`-flow and the
/// `u`-jet they induce at `z = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetReconstruction {
    pub point: OperPoint<Rational>,
    pub q: Vec<Taylor>,
    pub p: Vec<Taylor>,
    /// `u^{(k)}` for `k < order`.
    pub u: Vec<Rational>,
}

impl JetReconstruction {
    /// Jets `u^{(k)}`, `x = t_1` and `s_{2l+1} = t_{2l+1}/(2l+1)` as an assignment.
    pub fn values(&self) -> BTreeMap<Atom, Rational> {
        let g = self.point.g();
        let mut vals: BTreeMap<Atom, Rational> =
            self.u.iter().enumerate().map(|(k, v)| (Atom::UJet(k as u16), v.clone())).collect();
        let (x, s) = TimeMap { g }.s_from_t(&self.point.times);
        vals.insert(Atom::X, x);
        for (l, v) in s.into_iter().enumerate() {
            vals.insert(Atom::STime(l as u16 + 1), v);
        }
        vals
    }
}

/// Integrate Hamilton's equations of `Ham^(e_1)` order by order. Each step
/// evaluates `(dH/dp_j, -dH/dq_j)` on the current truncated series with
/// dual numbers and integrates once, gaining one order.
pub fn jet_reconstruct(point: &OperPoint<Rational>, order: usize) -> Result<JetReconstruction, CoordError> {
    let g = point.g();
    assert!(order >= 1 && order <= 2 * g + 2, "order must be in 1..=2g+2");
    let mut q: Vec<Taylor> = point.q.iter().map(|v| Taylor::truncated(vec![v.clone()], 1)).collect();
    let mut p: Vec<Taylor> = point.p.iter().map(|v| Taylor::truncated(vec![v.clone()], 1)).collect();
    let lift = |v: &Rational| Dual::constant(Taylor::exact(vec![v.clone()]));
    let mut t: Vec<Dual<Taylor>> = point.times.t.iter().map(lift).collect();
    t[0] = Dual::constant(Taylor::variable_at(point.times.t[0].clone()));
    let times = IrregularTimes::new(g, t);
    for _ in 1..order {
        let dq: Vec<Dual<Taylor>> = (0..g).map(|j| Dual::variable(q[j].clone(), j, 2 * g)).collect();
        let dp: Vec<Dual<Taylor>> = (0..g).map(|j| Dual::variable(p[j].clone(), g + j, 2 * g)).collect();
        let h = OperPoint::new(dq, dp, times.clone()).ham(1)?;
        let nq = (0..g).map(|j| h.deriv(g + j).integrate(point.q[j].clone())).collect();
        let np = (0..g).map(|j| h.deriv(j).negate().integrate(point.p[j].clone())).collect();
        q = nq;
        p = np;
    }
    let mut u = Vec::with_capacity(order);
    let mut fact = int(1);
    for k in 0..order {
        if k > 0 {
            fact *= int(k as i64);
        }
        let sum: Rational = q.iter().map(|s| s.coeff(k).expect("within order")).sum();
        u.push(sum * &fact * int(-2));
    }
    Ok(JetReconstruction { point: point.clone(), q, p, u })
}

fn coord(e: CoordError) -> Failure {
    Failure::error(e)
}

/// `hatL(q, p, t) = A^(g)(u-jet, s)` entrywise, `(q_j, p_j) = (lambda_j, mu_j)`
/// and the reconstructed jet lies on the string locus.
pub fn lax_identity_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    lax_identity_at(&sample_point(g, seed, trial))
}

pub fn lax_identity_at(pt: &OperPoint<Rational>) -> Verdict {
    let g = pt.g();
    let jet = jet_reconstruct(pt, 2 * g + 2).map_err(coord)?;
    let vals = jet.values();
    let table = LenardTable::new(g + 1);
    let string = string_lhs(&table, g, true).eval(&vals).map_err(Failure::error)?;
    expect_eq(|| "string equation at the reconstructed jet".into(), &int(0), &string)?;
    let ag = eval_lax(&build_ag(&table, g).map_err(Failure::error)?, &vals).map_err(Failure::error)?;
    let hat = pt.geometric_hatl().map_err(coord)?;
    if let Some((i, j, e, a, b)) = first_difference(&hat, &ag) {
        return Err(Failure::mismatch(format!("entry ({},{}) at lambda^{e}", i + 1, j + 1), a, b));
    }
    let [[alpha, beta], _] = poly_entries(&ag).map_err(Failure::error)?;
    for (j, (qj, pj)) in pt.q.iter().zip(&pt.p).enumerate() {
        let b = crate::exact::upoly::eval(&beta, qj);
        expect_eq(|| format!("beta(q_{})", j + 1), &int(0), &b)?;
        let a = crate::exact::upoly::eval(&alpha, qj);
        expect_eq(|| format!("alpha(q_{}) = p_{}", j + 1, j + 1), pj, &a)?;
    }
    Ok(())
}

/// `I_k = H_{inf,g-k} - A_{g-k} - Res lambda^{-(g+1-k)} sum_i p_i/(lambda-q_i) l_i(lambda)`
/// with `I_k` read off `-det hatL`, and the half-integer coefficients of
/// `sqrt(-det hatL)` equal to `c_{2m-1} = t_{2m+1}/2`.
pub fn invariants_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    let pt = sample_point(g, seed, trial);
    let hat = pt.geometric_hatl().map_err(coord)?;
    let cc = TimeMap { g }.ccoeffs(&pt.times);
    let sd = spectral_data_from(&hat, &cc).map_err(Failure::error)?;
    let hinf = pt.h_inf().map_err(coord)?;
    let a = a_convolution(&cc);
    for k in 1..=g {
        let res = correction_residue_lhs(&pt.q, &pt.p, k).map_err(coord)?;
        let want = &hinf[g - k] - &a[g - k] - res;
        expect_eq(|| format!("I_{k}"), &want, &sd.i[k - 1])?;
    }
    for m in 0..=g as i64 {
        let got = sd.xi_coeff(m).map_err(Failure::error)?;
        let want = pt.times.get(2 * m + 1).scale(&Rational::new(1.into(), 2.into()));
        expect_eq(|| format!("xi at lambda^({m}-1/2) vs t_{}/2", 2 * m + 1), &want, &got)?;
        expect_eq(|| format!("c_{} vs t_{}/2", 2 * m - 1, 2 * m + 1), &want, &cc.get(m))?;
    }
    Ok(())
}

/// For every `k`: (i) `(2k-1) Ham = H_k + [C^{-1} R]_k`; (ii)
/// `(2k-1) Ham = K_{2k-1} + f_{2k-1}`; (iii) `(2k-1) Ham - K_{2k-1}` is the
/// same at a second `(q, p)` with the same times.
pub fn hamiltonian_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    let pt = sample_point(g, seed, trial);
    let cc = TimeMap { g }.ccoeffs(&pt.times);
    let other = {
        let mut s = Sampler::new(seed ^ 0x5eed, trial);
        OperPoint::new(s.distinct_small_ints(g), s.small_rationals(g), pt.times.clone())
    };
    let sd = spectral_data_from(&pt.geometric_hatl().map_err(coord)?, &cc).map_err(Failure::error)?;
    let a = a_convolution(&cc);
    let r: Vec<Rational> = (1..=g)
        .map(|k| Ok(&a[g - k] + correction_residue_lhs(&pt.q, &pt.p, k)?))
        .collect::<Result<_, CoordError>>()
        .map_err(coord)?;
    let cr = ToeplitzC::c(&cc).solve(&r);
    let sp = |o: &OperPoint<Rational>| SpectralPoint { lambdas: o.q.clone(), mus: o.p.clone(), cc: cc.clone() };
    let (sp1, sp2) = (sp(&pt), sp(&other));
    let f = sp1.time_term();
    for k in 1..=g {
        let w = int(2 * k as i64 - 1);
        let lhs = pt.ham(k).map_err(coord)? * &w;
        expect_eq(|| format!("(i) k={k}: H_k + [C^-1 R]_k"), &lhs, &(&sd.hs[k - 1] + &cr[k - 1]))?;
        let kk = k_hamiltonian(&sp1, k).map_err(coord)?;
        expect_eq(|| format!("(ii) k={k}: K + f"), &lhs, &(&kk + &f[k - 1]))?;
        let lhs2 = other.ham(k).map_err(coord)? * &w;
        let kk2 = k_hamiltonian(&sp2, k).map_err(coord)?;
        expect_eq(|| format!("(iii) k={k}: (2k-1)Ham - K at a second point"), &(&lhs - &kk), &(&lhs2 - &kk2))?;
    }
    Ok(())
}

/// The `(Q, P)` polynomial correction equals the coordinate form, vanishes
/// at `k = 1` and is linear in `P`.
pub fn symmetric_correction_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    let pt = sample_point(g, seed, trial);
    let sym = SymPoint::from_oper(&pt).map_err(coord)?;
    let sp = SpectralPoint { lambdas: pt.q.clone(), mus: pt.p.clone(), cc: TimeMap { g }.ccoeffs(&pt.times) };
    let scaled = |c: i64| SymPoint { ps: sym.ps.iter().map(|x| x * int(c)).collect(), ..sym.clone() };
    let (two, zero) = (scaled(2), scaled(0));
    for k in 1..=g {
        let got = sym.correction(k);
        expect_eq(|| format!("k={k}: symmetric vs coordinate form"), &sp.s_term(k).map_err(coord)?, &got)?;
        expect_eq(|| format!("k={k}: linear in P"), &(&got * int(2)), &two.correction(k))?;
        expect_eq(|| format!("k={k}: no P-free part"), &int(0), &zero.correction(k))?;
    }
    expect_eq(|| "k=1 vanishes".into(), &int(0), &sym.correction(1))
}

/// Genus one in closed form: `Ham^(e_1) = K_1 = mu^2 - lambda^3 - x lambda`
/// with `f_1 = 0`, polynomially in `(mu, x)` at seven values of `lambda`,
/// which pins down a cubic in `lambda`.
pub fn genus_one_closed_form() -> Verdict {
    let (mu, x) = (MultiPoly::atom(Atom::MU), MultiPoly::atom(Atom::X));
    for l in -3..=3 {
        let lam = MultiPoly::int(l);
        let want = &mu * &mu - lam.pow(3) - &x * &lam;
        let pt = OperPoint::new(vec![lam.clone()], vec![mu.clone()], IrregularTimes::new(1, vec![x.clone()]));
        expect_eq(|| format!("Ham at lambda = {l}"), &want, &pt.ham(1).map_err(coord)?)?;
        let sp = SpectralPoint { lambdas: vec![int(l)], mus: vec![mu.clone()], cc: CCoeffs::symbolic(1) };
        expect_eq(|| format!("K_1 at lambda = {l}"), &want, &k_hamiltonian(&sp, 1).map_err(coord)?)?;
    }
    expect_eq(|| "f_1".into(), &MultiPoly::zero(), &time_terms_symbolic(1)[0])
}

/// `f_{2k-1}(s)` as polynomials in `x = s_1` and `s_3..`.
pub fn time_terms_symbolic(g: usize) -> Vec<MultiPoly> {
    let cc = CCoeffs::<MultiPoly>::symbolic(g);
    let mut a = a_convolution(&cc);
    a.reverse();
    ToeplitzC::c(&cc).solve(&a)
}

/// The dictionary as a JSON document.
pub fn dictionary(g: usize) -> Value {
    let mut times = vec![json!({"isomonodromic": "t_inf_1", "minimal_model": "x = s_1"})];
    for k in 1..g {
        times.push(json!({
            "isomonodromic": format!("t_inf_{}", 2 * k + 1),
            "minimal_model": format!("{} s_{}", 2 * k + 1, 2 * k + 1),
        }));
    }
    times.push(json!({"isomonodromic": format!("t_inf_{}", 2 * g + 1), "minimal_model": format!("0 = s_{}", 2 * g + 1)}));
    times.push(json!({"isomonodromic": format!("t_inf_{}", 2 * g + 3), "minimal_model": "2"}));
    let ham: Vec<Value> = time_terms_symbolic(g)
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            let k = i + 1;
            json!({
                "k": k,
                "identity": format!("{} Ham^(e_{}) = K_{} + f_{}", 2 * k - 1, 2 * k - 1, 2 * k - 1, 2 * k - 1),
                "f": f.to_string(),
            })
        })
        .collect();
    json!({
        "g": g,
        "r_inf": g + 3,
        "times": times,
        "coordinates": [
            {"isomonodromic": "q_j", "minimal_model": "lambda_j"},
            {"isomonodromic": "p_j", "minimal_model": "mu_j"},
            {"isomonodromic": "Q_1 = sum q_j", "minimal_model": "-u/2"},
        ],
        "lax": [
            {"isomonodromic": "hatL(lambda)", "minimal_model": "A^(g)(lambda)"},
            {"isomonodromic": "(2l+1) hatA_(e_(2l+1))(lambda)", "minimal_model": "U_(2l+1)(lambda)"},
        ],
        "hamiltonians": ham,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn time_map_examples() {
        let tm = TimeMap { g: 3 };
        let t = tm.t_from_s(&int(7), &[rat(1, 3), rat(2, 5)]);
        assert_eq!(t.t, vec![int(7), int(1), int(2)]);
        assert_eq!(tm.s_from_t(&t), (int(7), vec![rat(1, 3), rat(2, 5)]));
        let c = tm.ccoeffs(&t);
        for l in 0..=4 {
            assert_eq!(c.get(l), t.get(2 * l + 1) * rat(1, 2));
        }
    }

    #[test]
    fn genus_one_jet() {
        // q' = 2p, p' = 3q^2 + t_1
        let pt = OperPoint::new(vec![int(2)], vec![int(3)], IrregularTimes::new(1, vec![int(5)]));
        let jet = jet_reconstruct(&pt, 4).unwrap();
        assert_eq!(jet.u[0], int(-4));
        assert_eq!(jet.u[1], int(-12));
        assert_eq!(jet.u[2], int(-4) * int(3 * 4 + 5));
        // u''' = -4 (6 q q' + 1)
        assert_eq!(jet.u[3], int(-4) * (int(6 * 2 * 6) + int(1)));
        lax_identity_at(&pt).unwrap();
    }

    #[test]
    fn dictionary_checks() {
        for g in 1..=3 {
            for t in 0..4 {
                lax_identity_trial(g, 31, t).unwrap();
                invariants_trial(g, 31, t).unwrap();
                hamiltonian_trial(g, 31, t).unwrap();
                symmetric_correction_trial(g, 31, t).unwrap();
            }
        }
        for t in 0..4 {
            invariants_trial(4, 31, t).unwrap();
        }
    }

    #[test]
    fn genus_one_time_term_vanishes() {
        assert_eq!(time_terms_symbolic(1), vec![MultiPoly::zero()]);
        genus_one_closed_form().unwrap();
    }
}
