//! Seeded checks of the coefficient bracket: canonical `(lambda_j, mu_j)`,
//! Casimirs, the ad-invariant flows on the string locus, and the Jacobi and
//! Leibniz identities.

use std::collections::BTreeMap;

use super::{derive_coeff_brackets, pair, phase_atoms, CoeffBracket, MumfordPhase};
use crate::diffjet::{u, LenardTable, StringReducer};
use crate::exact::{int, upoly, Atom, MultiPoly, Rational, Ring, Role};
use crate::minimal::spectral::locus_point;
use crate::minimal::wave::{build_ag, eval_lax, poly_entries};
use crate::sample::Sampler;
use crate::verdict::{expect_eq, Failure, Verdict};

/// A phase point whose `beta` has the given roots, with random `a`, `c`.
pub fn phase_from_roots(roots: &[Rational], s: &mut Sampler) -> MumfordPhase<Rational> {
    let g = roots.len();
    let b = upoly::from_roots(roots)[..g].to_vec();
    MumfordPhase { g, a: s.small_rationals(g), b, c: s.small_rationals(g + 1) }
}

fn rat_values(ph: &MumfordPhase<Rational>) -> BTreeMap<Atom, Rational> {
    ph.values()
}

/// Gradients of `lambda_i` and `mu_i = alpha(lambda_i)` in phase
/// coordinates, from `d lambda_i / d b_k = -lambda_i^k / beta'(lambda_i)`.
fn root_gradients(ph: &MumfordPhase<Rational>, li: &Rational) -> Result<(Vec<Rational>, Vec<Rational>), Failure> {
    let g = ph.g;
    let n = 3 * g + 1;
    let db = upoly::eval(&upoly::deriv(&ph.beta()), li);
    if db.is_zero() {
        return Err(Failure::error(format!("beta'({li}) = 0")));
    }
    let dal = upoly::eval(&upoly::deriv(&ph.alpha()), li);
    let (mut gl, mut gm) = (vec![int(0); n], vec![int(0); n]);
    let mut pw = int(1);
    for k in 0..g {
        let dl = -&pw / &db;
        gm[k] = pw.clone();
        gm[g + k] = &dal * &dl;
        gl[g + k] = dl;
        pw *= li;
    }
    Ok((gl, gm))
}

/// `{lambda_i, lambda_j} = {mu_i, mu_j} = 0` and `{lambda_i, mu_j} = delta_ij`
/// at a phase point built from distinct rational roots, plus
/// `{lambda_j, I~_0} = 0`.
pub fn canonical_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    let cb = derive_coeff_brackets(g);
    let mut s = Sampler::new(seed, trial);
    let roots = s.distinct_small_rationals(g);
    let ph = phase_from_roots(&roots, &mut s);
    let m = cb.matrix_at(&rat_values(&ph)).map_err(Failure::error)?;
    let grads = roots.iter().map(|l| root_gradients(&ph, l)).collect::<Result<Vec<_>, _>>()?;
    for i in 0..g {
        for j in 0..g {
            let rt = roots_text(&roots);
            let at = |what: &'static str| {
                let rt = rt.clone();
                move || format!("{{{what}}} at i={i}, j={j}, roots {rt}")
            };
            let d = if i == j { int(1) } else { int(0) };
            expect_eq(at("lambda_i, lambda_j"), &int(0), &pair(&m, &grads[i].0, &grads[j].0))?;
            expect_eq(at("mu_i, mu_j"), &int(0), &pair(&m, &grads[i].1, &grads[j].1))?;
            expect_eq(at("lambda_i, mu_j"), &d, &pair(&m, &grads[i].0, &grads[j].1))?;
        }
    }
    let casimirs = casimir_gradients(&ph);
    for (i, (gl, _)) in grads.iter().enumerate() {
        for (n, gc) in casimirs.iter().enumerate() {
            expect_eq(|| format!("{{lambda_{i}, [h]_(g+{n})}}"), &int(0), &pair(&m, gl, gc))?;
        }
    }
    Ok(())
}

fn roots_text(r: &[Rational]) -> String {
    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Gradients of the coefficients `[h]_g .. [h]_{2g}` of `h = alpha^2 + beta gamma`.
fn casimir_gradients(ph: &MumfordPhase<Rational>) -> Vec<Vec<Rational>> {
    let g = ph.g;
    let (al, be, ga) = (ph.alpha(), ph.beta(), ph.gamma());
    let at = |v: &[Rational], k: i64| if k < 0 { int(0) } else { v.get(k as usize).cloned().unwrap_or_else(|| int(0)) };
    (g..=2 * g)
        .map(|n| {
            let n = n as i64;
            let mut grad = Vec::with_capacity(3 * g + 1);
            grad.extend((0..g as i64).map(|k| at(&al, n - k) * int(2)));
            grad.extend((0..g as i64).map(|k| at(&ga, n - k)));
            grad.extend((0..=g as i64).map(|k| at(&be, n - k)));
            grad
        })
        .collect()
}

/// Every phase atom brackets to zero with every coefficient of `I~_0`,
/// symbolically.
pub fn casimir_symbolic(g: usize) -> Verdict {
    let cb = derive_coeff_brackets(g);
    let h = MumfordPhase::symbolic(g).h();
    for x in phase_atoms(g) {
        for (n, hn) in h.iter().enumerate().take(2 * g + 1).skip(g) {
            let v = cb.bracket(&MultiPoly::atom(x), hn);
            expect_eq(|| format!("{{{x}, [h]_{n}}}"), &MultiPoly::zero(), &v)?;
        }
    }
    Ok(())
}

/// The same at a seeded rational phase point.
pub fn casimir_sampled_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    let cb = derive_coeff_brackets(g);
    let mut s = Sampler::new(seed, trial);
    let ph = MumfordPhase { g, a: s.small_rationals(g), b: s.small_rationals(g), c: s.small_rationals(g + 1) };
    let m = cb.matrix_at(&rat_values(&ph)).map_err(Failure::error)?;
    let n = 3 * g + 1;
    for (k, gc) in casimir_gradients(&ph).iter().enumerate() {
        for x in 0..n {
            let mut e = vec![int(0); n];
            e[x] = int(1);
            expect_eq(|| format!("{{{}, [h]_(g+{k})}}", phase_atoms(g)[x]), &int(0), &pair(&m, &e, gc))?;
        }
    }
    Ok(())
}

/// `{A(lambda), I_{l+1}} = [A_l(lambda), A(lambda)]` for `l = 0..g-1` at the
/// phase point of a seeded jet on the string locus, with
/// `A_l = [lambda^{l-g} A]_+ - E_21 [beta]_{g-l-1}`.
///
/// `[beta]_{g-l-1} = R_{2l+1} + sum_{j>=1} c_{2g-2j+1} R_{2l-2j+1}`, so the
/// constant is `R_{2l+1}` exactly when `l = 0` or the times `s_3..` vanish;
/// `constant` uses `R_{2l+1}` and then draws the jet with those times zero.
pub fn ad_flow_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    ad_flow(g, seed, trial, false, false)
}

/// The constant-correction form with `R_{2l+1}`, on jets with `s_3 = .. = s_{2g-1} = 0`.
pub fn ad_flow_constant_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    ad_flow(g, seed, trial, true, false)
}

/// The constant-correction form on generic locus jets; fails for `g >= 2`.
pub fn ad_flow_constant_generic_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    ad_flow(g, seed, trial, true, true)
}

fn ad_flow(g: usize, seed: u64, trial: u64, constant: bool, generic: bool) -> Verdict {
    let table = LenardTable::new(g + 1);
    let mut s = Sampler::new(seed, trial);
    let vals = if constant && !generic { locus_point_x_only(g, &table, &mut s) } else { locus_point(g, &mut s) };
    let ag = build_ag(&table, g).map_err(Failure::error)?;
    let ag = eval_lax(&ag, &vals).map_err(Failure::error)?;
    let ph = MumfordPhase::from_lax(&ag, g).map_err(Failure::error)?;
    let cb = derive_coeff_brackets(g);
    let sym_h = MumfordPhase::symbolic(g).h();
    let pvals = rat_values(&ph);
    let entries = poly_entries(&ag).map_err(Failure::error)?;
    for l in 0..g {
        let inv = &sym_h[g - l - 1];
        let flow = |f: &[Rational], role: Role| -> Result<Vec<Rational>, Failure> {
            (0..f.len())
                .map(|i| {
                    let x = MultiPoly::atom(Atom::Moduli(role, i as u16));
                    cb.bracket(&x, inv).eval(&pvals).map_err(Failure::error)
                })
                .collect()
        };
        let fa = flow(&ph.a, Role::A)?;
        let mut fb = flow(&ph.b, Role::B)?;
        fb.push(int(0));
        let mut fc = flow(&ph.c, Role::C)?;
        fc.push(int(0));
        let lhs = [[fa.clone(), fb], [fc, upoly::neg(&fa)]];
        let r = if constant { table.r(l + 1).eval(&vals).map_err(Failure::error)? } else { entries[0][1][g - l - 1].clone() };
        let rhs = ad_rhs(&entries, g, l, &r);
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let (a, b) = (upoly::trim(lhs[i][j].clone()), upoly::trim(rhs[i][j].clone()));
            expect_eq(|| format!("l={l} entry ({},{}) of {{A, I_(l+1)}} vs [A_l, A]", i + 1, j + 1), &poly_text(&b), &poly_text(&a))?;
        }
    }
    Ok(())
}

/// A locus jet with only `x` among the times nonzero.
fn locus_point_x_only(g: usize, table: &LenardTable, s: &mut Sampler) -> BTreeMap<Atom, Rational> {
    let mut vals = BTreeMap::new();
    for k in 0..2 * g as u16 {
        vals.insert(Atom::UJet(k), s.small_rational());
    }
    vals.insert(Atom::X, s.small_rational());
    for l in 1..g as u16 {
        vals.insert(Atom::STime(l), int(0));
    }
    let top = StringReducer::new(table, g).reduce(&u(2 * g as u16));
    let v = top.eval(&vals).expect("all lower jets are bound");
    vals.insert(Atom::UJet(2 * g as u16), v);
    vals
}

/// `[A_l, A]` from dense entries of `A`.
fn ad_rhs(e: &[[Vec<Rational>; 2]; 2], g: usize, l: usize, r: &Rational) -> [[Vec<Rational>; 2]; 2] {
    let shift = g - l;
    let plus = |p: &Vec<Rational>| if p.len() > shift { p[shift..].to_vec() } else { vec![] };
    let mut al = [[plus(&e[0][0]), plus(&e[0][1])], [plus(&e[1][0]), plus(&e[1][1])]];
    al[1][0] = upoly::sub(&al[1][0], std::slice::from_ref(r));
    let prod = |x: &[[Vec<Rational>; 2]; 2], y: &[[Vec<Rational>; 2]; 2], i: usize, j: usize| {
        upoly::add(&upoly::mul(&x[i][0], &y[0][j]), &upoly::mul(&x[i][1], &y[1][j]))
    };
    std::array::from_fn(|i| std::array::from_fn(|j| upoly::sub(&prod(&al, e, i, j), &prod(e, &al, i, j))))
}

fn poly_text(p: &[Rational]) -> String {
    format!("[{}]", roots_text(p))
}

/// A random linear observable `sum_x r_x x` over the phase atoms.
fn linear_observable(g: usize, s: &mut Sampler) -> MultiPoly {
    phase_atoms(g).into_iter().map(|a| MultiPoly::atom(a).scale(&s.small_rational())).sum()
}

/// A random quadratic observable.
fn quadratic_observable(g: usize, s: &mut Sampler) -> MultiPoly {
    let atoms = phase_atoms(g);
    let mut out = linear_observable(g, s);
    for _ in 0..3 {
        let (x, y) = (atoms[s.below(atoms.len() as u64) as usize], atoms[s.below(atoms.len() as u64) as usize]);
        out += &(&MultiPoly::atom(x) * &MultiPoly::atom(y)).scale(&s.small_rational());
    }
    out
}

/// Jacobi on three linear observables: exact zero.
pub fn jacobi_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    let cb = derive_coeff_brackets(g);
    let mut s = Sampler::new(seed, trial);
    let (f, gg, h) = (linear_observable(g, &mut s), linear_observable(g, &mut s), linear_observable(g, &mut s));
    let b = |x: &MultiPoly, y: &MultiPoly| cb.bracket(x, y);
    let jac = b(&f, &b(&gg, &h)) + b(&gg, &b(&h, &f)) + b(&h, &b(&f, &gg));
    expect_eq(|| "Jacobi sum".to_string(), &MultiPoly::zero(), &jac)
}

/// Antisymmetry and Leibniz on three quadratic observables.
pub fn leibniz_trial(g: usize, seed: u64, trial: u64) -> Verdict {
    let cb: CoeffBracket = derive_coeff_brackets(g);
    let mut s = Sampler::new(seed, trial);
    let (f, gg, h) = (quadratic_observable(g, &mut s), quadratic_observable(g, &mut s), quadratic_observable(g, &mut s));
    expect_eq(|| "{F,G} + {G,F}".to_string(), &MultiPoly::zero(), &(cb.bracket(&f, &gg) + cb.bracket(&gg, &f)))?;
    let lhs = cb.bracket(&f, &(&gg * &h));
    let rhs = &cb.bracket(&f, &gg) * &h + &gg * &cb.bracket(&f, &h);
    expect_eq(|| "{F,GH} - {F,G}H - G{F,H}".to_string(), &MultiPoly::zero(), &(lhs - rhs))
}
