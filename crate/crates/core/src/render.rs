//! Plain math-mode LaTeX for polynomials, `lambda`-series and 2x2 Lax
//! matrices.
//!
//! Terms are listed in reverse monomial order, so the highest jets and the
//! highest powers of `lambda` come first and constants come last.

use num_traits::{One, Signed};

use crate::exact::{Atom, LambdaSeries, Mat2, Monomial, MultiPoly, Rational, Role};

pub fn atom(a: Atom) -> String {
    match a {
        Atom::UJet(0) => "u".into(),
        Atom::UJet(k) if k <= 6 => format!("u_{{{}}}", "x".repeat(k as usize)),
        Atom::UJet(k) => format!("u^{{({k})}}"),
        Atom::STime(0) => "x".into(),
        Atom::STime(l) => format!("s_{{{}}}", 2 * l + 1),
        Atom::ITime(k) => format!("t_{{\\infty,{k}}}"),
        Atom::OperQ(i) => format!("q_{{{i}}}"),
        Atom::OperP(i) => format!("p_{{{i}}}"),
        Atom::SymQ(i) => format!("Q_{{{i}}}"),
        Atom::SymP(i) => format!("P_{{{i}}}"),
        Atom::Moduli(Role::A, i) => format!("a_{{{i}}}"),
        Atom::Moduli(Role::B, i) => format!("b_{{{i}}}"),
        Atom::Moduli(Role::C, i) => format!("c_{{{i}}}"),
        Atom::Spectral(0) => "\\lambda".into(),
        Atom::Spectral(1) => "\\mu".into(),
        Atom::Spectral(i) => format!("z_{{{i}}}"),
        Atom::Var(i) => format!("v_{{{i}}}"),
    }
}

/// Unsigned rational as `n` or `\frac{n}{d}`.
fn magnitude(q: &Rational) -> String {
    let q = q.abs();
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

pub fn rational(q: &Rational) -> String {
    let m = magnitude(q);
    if q.is_negative() {
        format!("-{m}")
    } else {
        m
    }
}

fn power(base: &str, e: u32) -> String {
    if e == 1 {
        base.to_string()
    } else if base.contains('_') || base.contains('^') {
        // u_{xx}^2 reads badly; bracket subscripted bases
        format!("({base})^{{{e}}}")
    } else {
        format!("{base}^{{{e}}}")
    }
}

pub fn monomial(m: &Monomial) -> String {
    m.factors().iter().map(|&(a, e)| power(&atom(a), e)).collect::<Vec<_>>().join(" ")
}

/// Signed terms `(negative, body)` of a polynomial.
fn terms(p: &MultiPoly) -> Vec<(bool, String)> {
    let mut ts: Vec<(&Monomial, &Rational)> = p.terms().collect();
    ts.sort_by(|a, b| b.0.cmp(a.0));
    ts.into_iter()
        .map(|(m, c)| {
            let body = match (m.is_one(), c.abs().is_one()) {
                (true, _) => magnitude(c),
                (false, true) => monomial(m),
                (false, false) => format!("{} {}", magnitude(c), monomial(m)),
            };
            (c.is_negative(), body)
        })
        .collect()
}

fn join(ts: &[(bool, String)]) -> String {
    if ts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in ts.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

pub fn poly(p: &MultiPoly) -> String {
    join(&terms(p))
}

fn lambda_power(k2: i64) -> String {
    match k2 {
        0 => String::new(),
        2 => "\\lambda".into(),
        _ if k2 % 2 == 0 => format!("\\lambda^{{{}}}", k2 / 2),
        _ => format!("\\lambda^{{{}/2}}", k2),
    }
}

/// A `lambda`-series, highest power first, with `+ O(...)` when truncated.
pub fn series(s: &LambdaSeries<MultiPoly>) -> String {
    let mut out: Vec<(bool, String)> = Vec::new();
    for (k2, c) in s.terms2().rev() {
        let lp = lambda_power(k2);
        let ts = terms(c);
        if lp.is_empty() {
            out.extend(ts);
        } else if ts.len() == 1 {
            let (neg, body) = &ts[0];
            let body = if body == "1" { lp } else { format!("{body} {lp}") };
            out.push((*neg, body));
        } else {
            out.push((false, format!("\\left({}\\right) {lp}", join(&ts))));
        }
    }
    let mut text = join(&out);
    if let Some(f) = s.floor2() {
        let next = if s.is_half_step() { f - 1 } else { f - 2 };
        let lp = lambda_power(next);
        text.push_str(&format!(" + O({})", if lp.is_empty() { "1".into() } else { lp }));
    }
    text
}

pub fn matrix(m: &Mat2<LambdaSeries<MultiPoly>>) -> String {
    format!(
        "\\begin{{pmatrix}} {} & {} \\\\ {} & {} \\end{{pmatrix}}",
        series(&m.e[0][0]),
        series(&m.e[0][1]),
        series(&m.e[1][0]),
        series(&m.e[1][1])
    )
}

/// A rational function `num / den` of dense `lambda`-polynomials.
pub fn ratfn(num: &[MultiPoly], den: &[MultiPoly]) -> String {
    let p = |c: &[MultiPoly]| series(&LambdaSeries::from_poly(c.to_vec()));
    format!("\\frac{{{}}}{{{}}}", p(num), p(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffjet::{s, u, LenardTable};
    use crate::exact::rat;
    use crate::minimal::build_u2n1;

    #[test]
    fn lenard_latex() {
        let t = LenardTable::new(4);
        assert_eq!(poly(t.r(1)), "\\frac{1}{2} u");
        assert_eq!(poly(t.r(2)), "\\frac{1}{8} u_{xx} + \\frac{3}{8} u^{2}");
        assert_eq!(
            poly(t.r(3)),
            "\\frac{1}{32} u_{xxxx} + \\frac{5}{32} (u_{x})^{2} + \\frac{5}{16} u^{3} + \\frac{5}{16} u u_{xx}"
        );
    }

    #[test]
    fn signs_and_times() {
        let p = u(0).scale(&rat(-3, 2)) * s(1) + s(0) - MultiPoly::one();
        assert_eq!(poly(&p), "x - \\frac{3}{2} u s_{3} - 1");
        assert_eq!(poly(&MultiPoly::zero()), "0");
    }

    #[test]
    fn u3_matrix() {
        let m = build_u2n1(&LenardTable::new(3), 1).unwrap();
        assert_eq!(series(&m.e[0][1]), "\\lambda + \\frac{1}{2} u");
        assert_eq!(series(&m.e[0][0]), "-\\frac{1}{4} u_{x}");
        assert_eq!(
            series(&m.e[1][0]),
            "\\lambda^{2} - \\frac{1}{2} u \\lambda - \\frac{1}{4} u_{xx} - \\frac{1}{2} u^{2}"
        );
        assert!(matrix(&m).starts_with("\\begin{pmatrix}"));
    }
}
