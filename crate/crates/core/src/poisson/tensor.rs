//! Tensorial form of the bracket on `C^2 (x) C^2`: the defining commutator
//! with `P/(lambda - mu)` and `Delta`, its sigma-basis components, and the
//! gauge covariance under `I + g E_21`.

use super::{divided_difference, in_var, scalar_brackets, CoeffBracket, MumfordPhase};
use crate::exact::{int, Atom, Mat2, MultiPoly, Rational};
use crate::verdict::{Failure, Verdict};

/// A 4x4 matrix; row `(a, c)` is `2a + c` and column `(b, d)` is `2b + d`,
/// so `(X (x) Y)[(a,c),(b,d)] = X[a][b] Y[c][d]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor4(pub [[MultiPoly; 4]; 4]);

pub type M2 = Mat2<MultiPoly>;

impl Tensor4 {
    pub fn zero() -> Self {
        Tensor4(std::array::from_fn(|_| std::array::from_fn(|_| MultiPoly::zero())))
    }

    pub fn kron(x: &M2, y: &M2) -> Self {
        Tensor4(std::array::from_fn(|r| std::array::from_fn(|c| &x.e[r / 2][c / 2] * &y.e[r % 2][c % 2])))
    }

    pub fn add(&self, o: &Self) -> Self {
        Tensor4(std::array::from_fn(|r| std::array::from_fn(|c| &self.0[r][c] + &o.0[r][c])))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Tensor4(std::array::from_fn(|r| std::array::from_fn(|c| &self.0[r][c] - &o.0[r][c])))
    }

    pub fn scale(&self, f: &MultiPoly) -> Self {
        Tensor4(std::array::from_fn(|r| std::array::from_fn(|c| &self.0[r][c] * f)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Tensor4(std::array::from_fn(|r| {
            std::array::from_fn(|c| (0..4).map(|k| &self.0[r][k] * &o.0[k][c]).sum())
        }))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_zero())
    }

    /// The flip `v (x) w -> w (x) v`.
    pub fn perm() -> Self {
        let mut t = Tensor4::zero();
        for a in 0..2 {
            for c in 0..2 {
                t.0[2 * a + c][2 * c + a] = MultiPoly::one();
            }
        }
        t
    }

    /// `E_21 (x) E_21`.
    pub fn delta() -> Self {
        Tensor4::kron(&sigma(2), &sigma(2))
    }

    /// Entrywise exact division by `lambda - mu`.
    pub fn div_lambda_minus_mu(&self) -> Result<Self, String> {
        let mut out = Tensor4::zero();
        for r in 0..4 {
            for c in 0..4 {
                out.0[r][c] = div_by_lambda_minus_mu(&self.0[r][c])
                    .ok_or_else(|| format!("entry ({r},{c}) is not divisible by lambda - mu"))?;
            }
        }
        Ok(out)
    }

    /// Components on `sigma_i (x) sigma_j` with `i, j` in `{3, +, -}` and
    /// the remainder outside that span.
    pub fn sigma_components(&self) -> ([[MultiPoly; 3]; 3], Tensor4) {
        let at = |i: usize| match i {
            0 => (0, 0),
            1 => (0, 1),
            _ => (1, 0),
        };
        let comps: [[MultiPoly; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let ((a, b), (c, d)) = (at(i), at(j));
                self.0[2 * a + c][2 * b + d].clone()
            })
        });
        let mut recon = Tensor4::zero();
        for (i, row) in comps.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                recon = recon.add(&Tensor4::kron(&sigma(i), &sigma(j)).scale(v));
            }
        }
        (comps, self.sub(&recon))
    }
}

/// `sigma_3`, `sigma_+ = E_12`, `sigma_- = E_21` for `i = 0, 1, 2`; 3 is the identity.
pub fn sigma(i: usize) -> M2 {
    let (o, z) = (MultiPoly::one(), MultiPoly::zero());
    match i {
        0 => Mat2::new(o.clone(), z.clone(), z, -o),
        1 => Mat2::new(z.clone(), o, z.clone(), z),
        2 => Mat2::new(z.clone(), z.clone(), o, z),
        _ => Mat2::identity(),
    }
}

const SIGMA_NAMES: [&str; 3] = ["s3", "s+", "s-"];

fn div_by_lambda_minus_mu(p: &MultiPoly) -> Option<MultiPoly> {
    let n = p.degree_in(Atom::LAMBDA) as usize;
    if n == 0 {
        return p.is_zero().then(MultiPoly::zero);
    }
    let a: Vec<MultiPoly> = (0..=n).map(|k| p.coeff_in(Atom::LAMBDA, k as u32)).collect();
    let mu = MultiPoly::atom(Atom::MU);
    // synthetic division: q_{k-1} = a_k + mu q_k
    let mut q = vec![MultiPoly::zero(); n];
    q[n - 1] = a[n].clone();
    for k in (1..n).rev() {
        q[k - 1] = &a[k] + &(&mu * &q[k]);
    }
    if !(&a[0] + &(&mu * &q[0])).is_zero() {
        return None;
    }
    Some(in_var(&q, Atom::LAMBDA))
}

fn entry_matrix(f: [[Vec<MultiPoly>; 2]; 2], v: Atom) -> M2 {
    let [[a, b], [c, d]] = f;
    Mat2::new(in_var(&a, v), in_var(&b, v), in_var(&c, v), in_var(&d, v))
}

fn lax_in(ph: &MumfordPhase<MultiPoly>, v: Atom) -> M2 {
    let neg: Vec<MultiPoly> = ph.alpha().iter().map(|x| -x).collect();
    entry_matrix([[ph.alpha(), ph.beta()], [ph.gamma(), neg]], v)
}

/// `[A(l) (x) I + I (x) A(m), P/(l - m)] + [A(l) (x) I - I (x) A(m), Delta]`.
pub fn definition_tensor(al: &M2, am: &M2) -> Result<Tensor4, String> {
    let id = sigma(3);
    let (left, right) = (Tensor4::kron(al, &id), Tensor4::kron(&id, am));
    let r = left.add(&right).commutator(&Tensor4::perm()).div_lambda_minus_mu()?;
    Ok(r.add(&left.sub(&right).commutator(&Tensor4::delta())))
}

/// `{A_ab(l), A_cd(m)}` from the coefficient table.
pub fn bracket_tensor(cb: &CoeffBracket, al: &M2, am: &M2) -> Tensor4 {
    Tensor4(std::array::from_fn(|r| {
        std::array::from_fn(|c| cb.bracket(&al.e[r / 2][c / 2], &am.e[r % 2][c % 2]))
    }))
}

/// The closed sigma-basis form of the bracket.
pub fn closed_form_tensor(ph: &MumfordPhase<MultiPoly>) -> Tensor4 {
    let (al, be, ga) = (ph.alpha(), ph.beta(), ph.gamma());
    let k = |i: usize, j: usize| Tensor4::kron(&sigma(i), &sigma(j));
    let da = divided_difference(&al);
    let db = divided_difference(&be);
    let dg = divided_difference(&ga);
    let alpha_diff = in_var(&al, Atom::LAMBDA) - in_var(&al, Atom::MU);
    k(2, 2)
        .scale(&alpha_diff.scale(&int(-2)))
        .add(&k(1, 2).sub(&k(2, 1)).scale(&da.scale(&int(2))))
        .add(&k(0, 1).sub(&k(1, 0)).scale(&db))
        .sub(&k(0, 2).sub(&k(2, 0)).scale(&dg))
        .add(&k(0, 2).scale(&in_var(&be, Atom::LAMBDA)))
        .sub(&k(2, 0).scale(&in_var(&be, Atom::MU)))
}

fn tensor_eq(what: &str, expected: &Tensor4, got: &Tensor4) -> Verdict {
    for r in 0..4 {
        for c in 0..4 {
            if expected.0[r][c] != got.0[r][c] {
                return Err(Failure::mismatch(format!("{what} entry ({r},{c})"), &expected.0[r][c], &got.0[r][c]));
            }
        }
    }
    Ok(())
}

/// The defining commutator, the closed form and the coefficient table give
/// the same tensor, and its nine sigma components are the scalar brackets.
pub fn tensor_vs_scalar_check(g: usize) -> Verdict {
    let ph = MumfordPhase::symbolic(g);
    let cb = super::derive_coeff_brackets(g);
    let (al, am) = (lax_in(&ph, Atom::LAMBDA), lax_in(&ph, Atom::MU));
    let def = definition_tensor(&al, &am).map_err(Failure::error)?;
    tensor_eq("closed form vs definition", &closed_form_tensor(&ph), &def)?;
    tensor_eq("coefficient table vs definition", &def, &bracket_tensor(&cb, &al, &am))?;
    let (comps, rest) = def.sigma_components();
    if !rest.is_zero() {
        return Err(Failure::mismatch("component outside sigma (x) sigma", "0", "nonzero"));
    }
    let sb = scalar_brackets(&ph);
    let (be, ga) = (ph.beta(), ph.gamma());
    let want: [[MultiPoly; 3]; 3] = [
        [sb.aa.clone(), sb.ab.clone(), sb.ac.clone()],
        [-divided_difference(&be), sb.bb.clone(), sb.bc.clone()],
        [divided_difference(&ga) - in_var(&be, Atom::MU), -&sb.bc, sb.cc.clone()],
    ];
    for i in 0..3 {
        for j in 0..3 {
            if comps[i][j] != want[i][j] {
                let what = format!("{} (x) {} component", SIGMA_NAMES[i], SIGMA_NAMES[j]);
                return Err(Failure::mismatch(what, &want[i][j], &comps[i][j]));
            }
        }
    }
    Ok(())
}

/// The commutator tables of `P` and `Delta` with `I (x) sigma` and
/// `sigma (x) I`, and the elementary-matrix identity they follow from.
pub fn lemma_tables_check() -> Verdict {
    let k = |i: usize, j: usize| Tensor4::kron(&sigma(i), &sigma(j));
    let (p, d) = (Tensor4::perm(), Tensor4::delta());
    let two = MultiPoly::int(2);
    let cases: Vec<(&str, Tensor4, Tensor4)> = vec![
        ("[I(x)s3, P]", k(3, 0).commutator(&p), k(2, 1).sub(&k(1, 2)).scale(&two)),
        ("-[s3(x)I, P]", k(0, 3).commutator(&p).scale(&MultiPoly::int(-1)), k(2, 1).sub(&k(1, 2)).scale(&two)),
        ("[I(x)s+, P]", k(3, 1).commutator(&p), k(1, 0).sub(&k(0, 1))),
        ("-[s+(x)I, P]", k(1, 3).commutator(&p).scale(&MultiPoly::int(-1)), k(1, 0).sub(&k(0, 1))),
        ("[I(x)s-, P]", k(3, 2).commutator(&p), k(0, 2).sub(&k(2, 0))),
        ("-[s-(x)I, P]", k(2, 3).commutator(&p).scale(&MultiPoly::int(-1)), k(0, 2).sub(&k(2, 0))),
        ("[I(x)s3, D]", k(3, 0).commutator(&d), k(2, 2).scale(&MultiPoly::int(-2))),
        ("[s3(x)I, D]", k(0, 3).commutator(&d), k(2, 2).scale(&MultiPoly::int(-2))),
        ("[I(x)s+, D]", k(3, 1).commutator(&d), k(2, 0)),
        ("[s+(x)I, D]", k(1, 3).commutator(&d), k(0, 2)),
        ("[I(x)s-, D]", k(3, 2).commutator(&d), Tensor4::zero()),
        ("[s-(x)I, D]", k(2, 3).commutator(&d), Tensor4::zero()),
    ];
    for (what, got, want) in &cases {
        tensor_eq(what, want, got)?;
    }
    let e = |i: usize, j: usize| {
        let mut m = Mat2::zero();
        m.e[i][j] = MultiPoly::one();
        m
    };
    let delta = |x: usize, y: usize| if x == y { MultiPoly::one() } else { MultiPoly::zero() };
    for idx in 0..256usize {
        let [i, j, kk, l, a, b, c, dd] = std::array::from_fn(|n| (idx >> n) & 1);
        let lhs = Tensor4::kron(&e(i, j), &e(kk, l)).commutator(&Tensor4::kron(&e(a, b), &e(c, dd)));
        let rhs = Tensor4::kron(&e(i, b), &e(kk, dd))
            .scale(&(&delta(a, j) * &delta(l, c)))
            .sub(&Tensor4::kron(&e(a, j), &e(c, l)).scale(&(&delta(i, b) * &delta(kk, dd))));
        tensor_eq(&format!("[E{i}{j}(x)E{kk}{l}, E{a}{b}(x)E{c}{dd}]"), &rhs, &lhs)?;
    }
    Ok(())
}

fn conj(gi: &M2, a: &M2, gm: &M2) -> M2 {
    gi.mul(a).mul(gm)
}

/// `{G^-1 A G (x), G^-1 A G} = (G (x) G)^-1 {A (x), A} (G (x) G)` for
/// `G = I + gv E_21`, with the left side computed from the table on the
/// transformed entries.
pub fn gauge_covariance_check(g: usize, gv: &Rational) -> Verdict {
    let ph = MumfordPhase::symbolic(g);
    let cb = super::derive_coeff_brackets(g);
    let gp = MultiPoly::constant(gv.clone());
    let gm = Mat2::new(MultiPoly::one(), MultiPoly::zero(), gp.clone(), MultiPoly::one());
    let gi = Mat2::new(MultiPoly::one(), MultiPoly::zero(), -&gp, MultiPoly::one());
    let (al, am) = (lax_in(&ph, Atom::LAMBDA), lax_in(&ph, Atom::MU));
    let gg = Tensor4::kron(&gm, &gm);
    let ggi = Tensor4::kron(&gi, &gi);
    if !gg.commutator(&Tensor4::perm()).is_zero() || !gg.commutator(&Tensor4::delta()).is_zero() {
        return Err(Failure::mismatch("[G(x)G, P] and [G(x)G, Delta]", "0", "nonzero"));
    }
    let lhs = bracket_tensor(&cb, &conj(&gi, &al, &gm), &conj(&gi, &am, &gm));
    let rhs = ggi.mul(&bracket_tensor(&cb, &al, &am)).mul(&gg);
    tensor_eq("gauge covariance", &rhs, &lhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn lemma_tables() {
        lemma_tables_check().unwrap();
    }

    #[test]
    fn tensor_and_scalar_agree() {
        for g in 1..=3 {
            tensor_vs_scalar_check(g).unwrap();
        }
    }

    #[test]
    fn gauge_covariance() {
        gauge_covariance_check(1, &rat(-7, 3)).unwrap();
        gauge_covariance_check(2, &rat(5, 2)).unwrap();
    }

    #[test]
    fn division_by_lambda_minus_mu() {
        let (l, m) = (MultiPoly::atom(Atom::LAMBDA), MultiPoly::atom(Atom::MU));
        let p = &l.pow(3) - &m.pow(3);
        assert_eq!(div_by_lambda_minus_mu(&p).unwrap(), &(&l * &l + &l * &m) + &(&m * &m));
        assert!(div_by_lambda_minus_mu(&l).is_none());
    }
}
