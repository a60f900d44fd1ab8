//! The named verification checks behind `pi1 verify`.
//!
//! A check has an optional genus-wide part, run once, and an optional seeded
//! part, run once per trial. Trials are independent, so a failing trial can
//! be replayed on its own from `(check, g, seed, trial)`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use pi1_core::diffjet::{g2_ode_elimination_check, LenardTable};
use pi1_core::exact::{int, Atom};
use pi1_core::identify;
use pi1_core::minimal::hamiltonian::correction_residue_trial;
use pi1_core::minimal::spectral::{locus_point, spectral_data_at, spectral_data_symbolic, toeplitz_relation_check};
use pi1_core::minimal::{zero_curvature_checks, CCoeffs};
use pi1_core::diffjet::StringReducer;
use pi1_core::poisson;
use pi1_core::psido::string_operator_residual;
use pi1_core::sample::Sampler;
use pi1_core::verdict::{expect_eq, run_trials, Failure, Verdict};

pub type Symbolic = fn(usize) -> Vec<Failure>;
pub type Trial = fn(usize, u64, u64) -> Verdict;

pub struct Check {
    pub name: &'static str,
    pub summary: &'static str,
    pub symbolic: Option<Symbolic>,
    pub trial: Option<Trial>,
    /// Part of `verify all`.
    pub in_all: bool,
}

/// Every check, in the order `verify all` runs them.
pub const CHECKS: &[Check] = &[
    Check {
        name: "zero-curvature",
        summary: "Lemmas A, B and C on the wave matrices",
        symbolic: Some(zero_curvature),
        trial: None,
        in_all: true,
    },
    Check {
        name: "toeplitz",
        summary: "beta = C~(s) R~, xi coefficients and I = C(s) H",
        symbolic: Some(toeplitz_symbolic),
        trial: Some(toeplitz_trial),
        in_all: true,
    },
    Check {
        name: "poisson-canonical",
        summary: "scalar brackets from the r-matrix, canonical (lambda, mu) and the ad-flow",
        symbolic: Some(poisson_symbolic),
        trial: Some(poisson_trial),
        in_all: true,
    },
    Check {
        name: "casimir",
        summary: "the top coefficients of -det A are Casimirs",
        symbolic: Some(casimir_symbolic),
        trial: Some(poisson::casimir_sampled_trial),
        in_all: true,
    },
    Check {
        name: "residue-lemma",
        summary: "the correction-term residue lemma",
        symbolic: None,
        trial: Some(residue_trial),
        in_all: true,
    },
    Check {
        name: "lax-identity",
        summary: "hatL = A^(g) after jet reconstruction",
        symbolic: None,
        trial: Some(identify::lax_identity_trial),
        in_all: true,
    },
    Check {
        name: "invariants",
        summary: "spectral invariants from H_inf and the residue correction",
        symbolic: None,
        trial: Some(identify::invariants_trial),
        in_all: true,
    },
    Check {
        name: "hamiltonians",
        summary: "(2k-1) Ham = H_k + [C^-1 R]_k = K_(2k-1) + f_(2k-1)",
        symbolic: Some(hamiltonians_symbolic),
        trial: Some(identify::hamiltonian_trial),
        in_all: true,
    },
    Check {
        name: "symmetric-correction",
        summary: "the correction term in symmetric coordinates",
        symbolic: None,
        trial: Some(identify::symmetric_correction_trial),
        in_all: true,
    },
    Check {
        name: "string-operator",
        summary: "[Q, P] - 1 = -2 d_x(string equation)",
        symbolic: Some(string_operator),
        trial: None,
        in_all: true,
    },
    Check {
        name: "g2-ode",
        summary: "the genus-2 order-7 ODE by eliminating s_3",
        symbolic: Some(g2_ode),
        trial: None,
        in_all: true,
    },
    Check {
        name: "ad-flow-constant",
        summary: "the ad-flow with a constant R_(2l+1) correction; fails once s_3.. are nonzero",
        symbolic: None,
        trial: Some(poisson::ad_flow_constant_generic_trial),
        in_all: false,
    },
];

pub fn find(name: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.name == name)
}

pub fn all() -> impl Iterator<Item = &'static Check> {
    CHECKS.iter().filter(|c| c.in_all)
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

/// Failures of the genus-wide part, or of one trial, with panics turned
/// into errors.
pub fn run_symbolic(check: &Check, g: usize) -> Vec<Failure> {
    match check.symbolic {
        None => Vec::new(),
        Some(f) => catch_unwind(AssertUnwindSafe(|| f(g)))
            .unwrap_or_else(|p| vec![Failure::error(format!("panic: {}", panic_message(p)))]),
    }
}

pub fn run_trial(check: &Check, g: usize, seed: u64, trial: u64) -> Verdict {
    match check.trial {
        None => Ok(()),
        Some(f) => catch_unwind(AssertUnwindSafe(|| f(g, seed, trial)))
            .unwrap_or_else(|p| Err(Failure::error(format!("panic: {}", panic_message(p))))),
    }
}

pub fn run_trials_of(check: &Check, g: usize, seed: u64, trials: u64) -> Vec<(u64, Failure)> {
    if check.trial.is_none() {
        return Vec::new();
    }
    run_trials(trials, |t| run_trial(check, g, seed, t))
}

fn verdicts(v: impl IntoIterator<Item = Verdict>) -> Vec<Failure> {
    v.into_iter().filter_map(Result::err).collect()
}

fn zero_curvature(g: usize) -> Vec<Failure> {
    zero_curvature_checks(g)
        .items
        .into_iter()
        .filter(|i| !i.ok)
        .map(|i| Failure::mismatch(format!("Lemma {}", i.name), "0", i.witness.unwrap_or_default()))
        .collect()
}

fn toeplitz_symbolic(g: usize) -> Vec<Failure> {
    let mut out = Vec::new();
    match toeplitz_relation_check(g) {
        Ok(true) => {}
        Ok(false) => out.push(Failure::mismatch("beta = C~(s) R~", "holds", "fails")),
        Err(e) => out.push(Failure::error(e)),
    }
    // the symbolic I = C(s) H grows quickly; beyond g = 3 it is sampled
    if g <= 3 {
        out.extend(verdicts([spectral_symbolic(g)]));
    }
    out
}

/// `xi` coefficients and `I - C(s) H` modulo the string equation.
fn spectral_symbolic(g: usize) -> Verdict {
    let sd = spectral_data_symbolic(g).map_err(Failure::error)?;
    let cc = CCoeffs::symbolic(g);
    let mut r = StringReducer::new(&LenardTable::new(g + 1), g);
    for m in 0..=g as i64 + 1 {
        let got = r.reduce(&sd.xi_coeff(m).map_err(Failure::error)?);
        expect_eq(|| format!("xi at lambda^({m}-1/2)"), &cc.get(m), &got)?;
    }
    for (k, res) in sd.toeplitz_residual(&cc).iter().enumerate() {
        expect_eq(|| format!("(I - C H)_{}", k + 1), &pi1_core::exact::MultiPoly::zero(), &r.reduce(res))?;
    }
    Ok(())
}

fn toeplitz_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    let vals = locus_point(g, &mut Sampler::new(seed, trial));
    let sd = spectral_data_at(g, &vals).map_err(Failure::error)?;
    let cc = CCoeffs::symbolic(g).try_map(|c| c.eval(&vals)).map_err(Failure::error)?;
    for (k, res) in sd.toeplitz_residual(&cc).iter().enumerate() {
        expect_eq(|| format!("(I - C H)_{}", k + 1), &int(0), res)?;
    }
    for m in 0..=g as i64 + 1 {
        expect_eq(|| format!("xi at lambda^({m}-1/2)"), &cc.get(m), &sd.xi_coeff(m).map_err(Failure::error)?)?;
    }
    expect_eq(|| "xi at lambda^(-1/2) = x/2".into(), &(&vals[&Atom::STime(0)] / int(2)), &sd.xi_coeff(0).map_err(Failure::error)?)
}

fn poisson_symbolic(g: usize) -> Vec<Failure> {
    let mut v = vec![poisson::lemma_tables_check()];
    // the tensor expansion is exponential in g
    if g <= 3 {
        v.push(poisson::tensor_vs_scalar_check(g));
    }
    verdicts(v)
}

fn poisson_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    poisson::canonical_trial(g, seed, trial)?;
    poisson::jacobi_trial(g, seed, trial)?;
    poisson::leibniz_trial(g, seed, trial)?;
    if g <= 3 {
        poisson::ad_flow_trial(g, seed, trial)?;
    }
    Ok(())
}

fn casimir_symbolic(g: usize) -> Vec<Failure> {
    if g <= 2 {
        verdicts([poisson::casimir_symbolic(g)])
    } else {
        Vec::new()
    }
}

fn residue_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    match correction_residue_trial(g, seed, trial) {
        Ok(None) => Ok(()),
        Ok(Some((_, k, lhs, rhs))) => Err(Failure::mismatch(format!("k={k}: residue vs closed form"), lhs, rhs)),
        Err(e) => Err(Failure::error(e)),
    }
}

/// The genus-one closed forms `f_1 = 0` and `Ham = mu^2 - lambda^3 - x lambda`.
fn hamiltonians_symbolic(g: usize) -> Vec<Failure> {
    if g == 1 {
        verdicts([identify::genus_one_closed_form()])
    } else {
        Vec::new()
    }
}

fn string_operator(g: usize) -> Vec<Failure> {
    match string_operator_residual(&LenardTable::new(g + 2), g) {
        Ok(r) if r.is_zero() => Vec::new(),
        Ok(r) => vec![Failure::mismatch("[Q,P] - 1 + 2 d_x(string)", "0", r)],
        Err(e) => vec![Failure::error(e)],
    }
}

fn g2_ode(_g: usize) -> Vec<Failure> {
    match g2_ode_elimination_check(&LenardTable::new(4)) {
        Ok(true) => Vec::new(),
        Ok(false) => vec![Failure::mismatch("elimination of s_3", "reference ODE", "different ODE")],
        Err(e) => vec![Failure::error(e)],
    }
}
