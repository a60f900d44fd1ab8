use proptest::prelude::*;

use pi1_core::diffjet::{d_x, s, u, DiffPoly, LenardTable};
use pi1_core::exact::rational::{from_text, to_text};
use pi1_core::exact::{rat, upoly, Atom, LambdaSeries, Monomial, MultiPoly, Rational};
use pi1_core::psido::PsiOp;
use pi1_core::symfunc::{
    e_direct, e_from_roots, h_direct, h_from_e, newton_identity_residual, newton_recursion_residual,
    powersum_direct, powersum_from_e,
};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

/// Polynomials in three scratch variables, up to five terms of degree <= 4.
fn poly() -> impl Strategy<Value = MultiPoly> {
    let term = (small_rat(), prop::collection::vec((0u16..3, 1u32..=2), 0..=2))
        .prop_map(|(c, f)| MultiPoly::term(c, Monomial::from_factors(f.into_iter().map(|(v, e)| (Atom::Var(v), e)).collect())));
    prop::collection::vec(term, 0..=5).prop_map(|ts| ts.iter().fold(MultiPoly::zero(), |acc, t| &acc + t))
}

/// Differential polynomials in `u, u_x, u_xx, u_xxx`, `x`, `s_3` and `s_5`.
fn diffpoly() -> impl Strategy<Value = DiffPoly> {
    let atom = prop_oneof![(0u16..4).prop_map(u), (0u16..3).prop_map(s)];
    let term = (small_rat(), prop::collection::vec(atom, 0..=3))
        .prop_map(|(c, fs)| fs.iter().fold(MultiPoly::constant(c), |acc, f| &acc * f));
    prop::collection::vec(term, 0..=4).prop_map(|ts| ts.iter().fold(MultiPoly::zero(), |acc, t| &acc + t))
}

/// Pseudo-differential operators with orders in `-3..=2` and small
/// coefficients in `u, u_x, u_xx`.
fn psiop() -> impl Strategy<Value = PsiOp> {
    let coeff = (small_rat(), prop::collection::vec(0u16..3, 0..=1))
        .prop_map(|(c, fs)| fs.iter().fold(MultiPoly::constant(c), |acc, &k| &acc * &u(k)));
    prop::collection::vec((coeff, -3i64..=2), 1..=3)
        .prop_map(|ts| ts.into_iter().fold(PsiOp::zero(), |acc, (c, k)| acc.add(&PsiOp::term(c, k))))
}

/// Agreement on every order certified in both operands.
fn agree(a: &PsiOp, b: &PsiOp) -> bool {
    match (a.floor(), b.floor()) {
        (None, None) => a == b,
        (fa, fb) => {
            let f = fa.into_iter().chain(fb).max().expect("one floor is set");
            // the watermark must leave something to compare
            f <= -1 && a.truncate(f) == b.truncate(f)
        }
    }
}

fn monic(deg: usize, lower: Vec<Rational>) -> LambdaSeries<Rational> {
    let mut c: Vec<Rational> = lower.into_iter().take(deg).collect();
    c.resize(deg, rat(0, 1));
    c.push(rat(1, 1));
    LambdaSeries::from_poly(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multipoly_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
        prop_assert!((&a * &MultiPoly::zero()).is_zero());
    }

    #[test]
    fn rational_text_round_trip(n in any::<i64>(), d in 1i64..=i64::MAX) {
        let q = rat(n, d);
        prop_assert_eq!(from_text(&to_text(&q)).unwrap(), q);
    }

    #[test]
    fn symmetric_functions_match_brute_force(x in prop::collection::vec(small_rat(), 1..=5)) {
        let n = x.len();
        let e = e_from_roots(&x);
        let h = h_from_e(&e, 6);
        let p = powersum_from_e(&e, 6);
        for k in 0..=6 {
            prop_assert_eq!(e.get(k), e_direct(&x, k));
            prop_assert_eq!(h.get(k), h_direct(&x, k));
            prop_assert_eq!(p.get(k), powersum_direct(&x, k));
        }
        for k in 0..=n {
            prop_assert_eq!(newton_identity_residual(&x, k), rat(0, 1));
        }
        for k in n..=n + 3 {
            prop_assert_eq!(newton_recursion_residual(&x, k), rat(0, 1));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn series_sqrt_squares_back(deg in 1usize..=6, lower in prop::collection::vec(small_rat(), 6)) {
        let h = monic(deg, lower);
        let depth2 = -2 * (deg as i64 + 3);
        let r = h.sqrt(depth2).unwrap();
        let sq = r.mul(&r);
        prop_assert!(sq.floor2().is_some_and(|f| f <= -4), "floor {:?}", sq.floor2());
        prop_assert!(sq.sub(&h).is_zero());
    }

    #[test]
    fn series_division(a in prop::collection::vec(small_rat(), 1..=4), b in prop::collection::vec(small_rat(), 0..=3), lead in nonzero_rat()) {
        let a = LambdaSeries::from_poly(a);
        let mut bc = b;
        bc.push(lead);
        let b = LambdaSeries::from_poly(bc);
        let inv = b.inverse(-12).unwrap();
        let one = inv.mul(&b);
        prop_assert!(one.floor2().is_some_and(|f| f <= -4), "floor {:?}", one.floor2());
        prop_assert!(one.sub(&LambdaSeries::constant(rat(1, 1))).is_zero());
        let q = a.div(&b, -12).unwrap();
        let back = q.mul(&b);
        prop_assert!(back.floor2().is_some_and(|f| f <= -2), "floor {:?}", back.floor2());
        prop_assert!(back.sub(&a).is_zero());
    }

    #[test]
    fn polynomial_division(num in prop::collection::vec(small_rat(), 0..=6), den in prop::collection::vec(small_rat(), 0..=3), lead in nonzero_rat()) {
        let mut den = den;
        den.push(lead);
        let (q, r) = upoly::divrem(&num, &den).unwrap();
        prop_assert!(upoly::trim(r.clone()).len() < den.len());
        let back = upoly::add(&upoly::mul(&q, &den), &r);
        prop_assert_eq!(upoly::trim(back), upoly::trim(num.clone()));
        let prod = upoly::mul(&num, &den);
        prop_assert_eq!(upoly::trim(upoly::div_exact(&prod, &den).unwrap()), upoly::trim(num));
    }

    #[test]
    fn total_and_flow_derivatives_commute(p in diffpoly(), l in 1usize..=3) {
        let t = LenardTable::new(4);
        prop_assert_eq!(t.d_s(l, &d_x(&p)).unwrap(), d_x(&t.d_s(l, &p).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psido_composition_is_associative(a in psiop(), b in psiop(), c in psiop()) {
        let depth = -6;
        let left = a.compose(&b, depth).compose(&c, depth);
        let right = a.compose(&b.compose(&c, depth), depth);
        prop_assert!(agree(&left, &right), "{} vs {}", left, right);
        let split = a.proj_plus().add(&a.proj_minus());
        prop_assert_eq!(split, a.clone());
        prop_assert!(a.proj_plus().proj_minus().is_zero());
    }
}
