//! The Mumford-system Poisson structure on the `3g+1` coefficients of
//! `A(lambda) = (alpha, beta; gamma, -alpha)`: an `r`-matrix bracket
//! corrected by `Delta = E_21 (x) E_21`, stored coefficientwise.

pub mod checks;
pub mod tensor;

use std::collections::BTreeMap;

use crate::exact::{int, upoly, Atom, ExactError, MultiPoly, Rational, Ring, Role};
use crate::minimal::wave::{from_poly_entries, poly_entries};
use crate::minimal::LaxMat;

pub use checks::{ad_flow_constant_generic_trial, ad_flow_constant_trial, ad_flow_trial, canonical_trial, casimir_sampled_trial, casimir_symbolic, jacobi_trial, leibniz_trial};
pub use tensor::{gauge_covariance_check, lemma_tables_check, tensor_vs_scalar_check};

/// A point of the Mumford phase space: `alpha = sum_{i<g} a_i lambda^i`,
/// `beta = lambda^g + sum_{i<g} b_i lambda^i`,
/// `gamma = lambda^{g+1} + sum_{i<=g} c_i lambda^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct MumfordPhase<R> {
    pub g: usize,
    pub a: Vec<R>,
    pub b: Vec<R>,
    pub c: Vec<R>,
}

/// `a_0..a_{g-1}, b_0..b_{g-1}, c_0..c_g` in that order.
pub fn phase_atoms(g: usize) -> Vec<Atom> {
    let g = g as u16;
    let mut out: Vec<Atom> = (0..g).map(|i| Atom::Moduli(Role::A, i)).collect();
    out.extend((0..g).map(|i| Atom::Moduli(Role::B, i)));
    out.extend((0..=g).map(|i| Atom::Moduli(Role::C, i)));
    out
}

impl MumfordPhase<MultiPoly> {
    pub fn symbolic(g: usize) -> Self {
        let at = |r: Role, n: usize| (0..n as u16).map(|i| MultiPoly::atom(Atom::Moduli(r, i))).collect();
        MumfordPhase { g, a: at(Role::A, g), b: at(Role::B, g), c: at(Role::C, g + 1) }
    }
}

impl<R: Ring> MumfordPhase<R> {
    pub fn alpha(&self) -> Vec<R> {
        self.a.clone()
    }

    pub fn beta(&self) -> Vec<R> {
        let mut v = self.b.clone();
        v.push(R::one());
        v
    }

    pub fn gamma(&self) -> Vec<R> {
        let mut v = self.c.clone();
        v.push(R::one());
        v
    }

    /// Dense coefficients of `alpha^2 + beta gamma = -det A`.
    pub fn h(&self) -> Vec<R> {
        let mut h = upoly::add(&upoly::mul(&self.a, &self.a), &upoly::mul(&self.beta(), &self.gamma()));
        h.resize(2 * self.g + 2, R::zero());
        h
    }

    pub fn matrix(&self) -> LaxMat<R> {
        from_poly_entries([[self.alpha(), self.beta()], [self.gamma(), upoly::neg(&self.a)]])
    }

    /// Read a phase point off a traceless polynomial matrix of the right shape.
    pub fn from_lax(m: &LaxMat<R>, g: usize) -> Result<Self, ExactError> {
        let [[al, be], [ga, d]] = poly_entries(m)?;
        let shape = |what: &str| ExactError::NotPolynomial(format!("{what} has the wrong shape for genus {g}"));
        if upoly::trim(upoly::add(&al, &d)) != Vec::<R>::new() {
            return Err(shape("trace"));
        }
        if al.len() > g || be.len() != g + 1 || be[g] != R::one() || ga.len() != g + 2 || ga[g + 1] != R::one() {
            return Err(shape("alpha/beta/gamma"));
        }
        let mut a = al;
        a.resize(g, R::zero());
        Ok(MumfordPhase { g, a, b: be[..g].to_vec(), c: ga[..=g].to_vec() })
    }

    /// Values of the phase atoms.
    pub fn values(&self) -> BTreeMap<Atom, R> {
        phase_atoms(self.g).into_iter().zip(self.a.iter().chain(&self.b).chain(&self.c).cloned()).collect()
    }
}

/// `sum_n f_n lambda^n` with `lambda = Spectral(0)` or `mu = Spectral(1)`.
pub fn in_var(f: &[MultiPoly], v: Atom) -> MultiPoly {
    let x = MultiPoly::atom(v);
    f.iter().enumerate().map(|(n, c)| c * &x.pow(n as u32)).sum()
}

/// `(f(lambda) - f(mu)) / (lambda - mu) = sum_n f_n sum_{i+j=n-1} lambda^i mu^j`.
pub fn divided_difference(f: &[MultiPoly]) -> MultiPoly {
    let (l, m) = (MultiPoly::atom(Atom::LAMBDA), MultiPoly::atom(Atom::MU));
    let mut out = MultiPoly::zero();
    for (n, c) in f.iter().enumerate() {
        for i in 0..n {
            out += &(c * &(&l.pow(i as u32) * &m.pow((n - 1 - i) as u32)));
        }
    }
    out
}

/// The six independent scalar brackets between the entries, as two-variable
/// polynomials: `{alpha(lambda), beta(mu)}` and so on.
pub struct ScalarBrackets {
    pub aa: MultiPoly,
    pub ab: MultiPoly,
    pub ac: MultiPoly,
    pub bb: MultiPoly,
    pub bc: MultiPoly,
    pub cc: MultiPoly,
}

pub fn scalar_brackets(ph: &MumfordPhase<MultiPoly>) -> ScalarBrackets {
    let (al, be, ga) = (ph.alpha(), ph.beta(), ph.gamma());
    ScalarBrackets {
        aa: MultiPoly::zero(),
        ab: divided_difference(&be),
        ac: -divided_difference(&ga) + in_var(&be, Atom::LAMBDA),
        bb: MultiPoly::zero(),
        bc: divided_difference(&al).scale(&int(2)),
        cc: (in_var(&al, Atom::LAMBDA) - in_var(&al, Atom::MU)).scale(&int(-2)),
    }
}

/// Coefficient brackets `{x, y}` for phase atoms `x, y`, each linear in the
/// phase atoms. Missing pairs are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffBracket {
    pub g: usize,
    table: BTreeMap<(Atom, Atom), MultiPoly>,
}

/// Coefficients of `lambda^i mu^j` of the scalar brackets give the table.
pub fn derive_coeff_brackets(g: usize) -> CoeffBracket {
    let ph = MumfordPhase::symbolic(g);
    let sb = scalar_brackets(&ph);
    let mut table = BTreeMap::new();
    let len = |r: Role| if r == Role::C { g + 1 } else { g };
    for (x, y, f) in [
        (Role::A, Role::A, &sb.aa),
        (Role::A, Role::B, &sb.ab),
        (Role::A, Role::C, &sb.ac),
        (Role::B, Role::B, &sb.bb),
        (Role::B, Role::C, &sb.bc),
        (Role::C, Role::C, &sb.cc),
    ] {
        for i in 0..len(x) {
            let fi = f.coeff_in(Atom::LAMBDA, i as u32);
            for j in 0..len(y) {
                let v = fi.coeff_in(Atom::MU, j as u32);
                if v.is_zero() {
                    continue;
                }
                let (ax, ay) = (Atom::Moduli(x, i as u16), Atom::Moduli(y, j as u16));
                if x != y {
                    table.insert((ay, ax), -&v);
                }
                table.insert((ax, ay), v);
            }
        }
    }
    CoeffBracket { g, table }
}

impl CoeffBracket {
    pub fn get(&self, x: Atom, y: Atom) -> MultiPoly {
        self.table.get(&(x, y)).cloned().unwrap_or_else(MultiPoly::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Atom, Atom), &MultiPoly)> {
        self.table.iter()
    }

    /// `{F, G} = sum_{x,y} dF/dx dG/dy {x, y}` over phase atoms; other atoms
    /// (such as `lambda`, `mu`) are parameters.
    pub fn bracket(&self, f: &MultiPoly, gg: &MultiPoly) -> MultiPoly {
        let atoms = phase_atoms(self.g);
        let df: Vec<MultiPoly> = atoms.iter().map(|&a| f.partial(a)).collect();
        let dg: Vec<MultiPoly> = atoms.iter().map(|&a| gg.partial(a)).collect();
        let mut out = MultiPoly::zero();
        for (&(x, y), v) in &self.table {
            let (ix, iy) = (index_of(&atoms, x), index_of(&atoms, y));
            if df[ix].is_zero() || dg[iy].is_zero() {
                continue;
            }
            out += &(&(&df[ix] * &dg[iy]) * v);
        }
        out
    }

    /// The structure matrix at a rational phase point, indexed like `phase_atoms`.
    pub fn matrix_at(&self, vals: &BTreeMap<Atom, Rational>) -> Result<Vec<Vec<Rational>>, ExactError> {
        let atoms = phase_atoms(self.g);
        let n = atoms.len();
        let mut m = vec![vec![int(0); n]; n];
        for (&(x, y), v) in &self.table {
            m[index_of(&atoms, x)][index_of(&atoms, y)] = v.eval(vals)?;
        }
        Ok(m)
    }
}

fn index_of(atoms: &[Atom], a: Atom) -> usize {
    atoms.iter().position(|&b| b == a).expect("phase atom")
}

/// `gf^T M gg` for gradients indexed like `phase_atoms`.
pub fn pair(m: &[Vec<Rational>], gf: &[Rational], gg: &[Rational]) -> Rational {
    let mut acc = int(0);
    for (i, fi) in gf.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        for (j, gj) in gg.iter().enumerate() {
            if !gj.is_zero() {
                acc += fi * &m[i][j] * gj;
            }
        }
    }
    acc
}
