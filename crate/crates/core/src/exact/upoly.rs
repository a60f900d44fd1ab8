//! Dense univariate polynomials as coefficient vectors (index = degree).

use super::ring::Ring;
use super::ExactError;

pub fn trim<R: Ring>(mut p: Vec<R>) -> Vec<R> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn add<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x.plus(y),
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => R::zero(),
            })
            .collect(),
    )
}

pub fn neg<R: Ring>(a: &[R]) -> Vec<R> {
    a.iter().map(|c| c.negate()).collect()
}

pub fn sub<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    add(a, &neg(b))
}

pub fn mul<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].plus(&x.times(y));
        }
    }
    trim(out)
}

pub fn scale<R: Ring>(a: &[R], c: &R) -> Vec<R> {
    trim(a.iter().map(|x| x.times(c)).collect())
}

pub fn eval<R: Ring>(a: &[R], x: &R) -> R {
    let mut acc = R::zero();
    for c in a.iter().rev() {
        acc = acc.times(x).plus(c);
    }
    acc
}

pub fn deriv<R: Ring>(a: &[R]) -> Vec<R> {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c.scale(&super::rational::int(i as i64))).collect())
}

/// `prod (lambda - r)`.
pub fn from_roots<R: Ring>(roots: &[R]) -> Vec<R> {
    let mut p = vec![R::one()];
    for r in roots {
        p = mul(&p, &[r.negate(), R::one()]);
    }
    p
}

/// Quotient and remainder; the divisor's leading coefficient must be a unit.
pub fn divrem<R: Ring>(num: &[R], den: &[R]) -> Result<(Vec<R>, Vec<R>), ExactError> {
    let den = trim(den.to_vec());
    let lead = den.last().ok_or(ExactError::DivisionByZero)?;
    let inv = lead.try_inverse().ok_or(ExactError::NonInvertible)?;
    let mut rem = trim(num.to_vec());
    if rem.len() < den.len() {
        return Ok((Vec::new(), rem));
    }
    let mut quo = vec![R::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let c = rem.last().expect("nonempty").times(&inv);
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] = rem[shift + i].minus(&c.times(d));
        }
        quo[shift] = c;
        // the leading term cancels exactly
        rem.pop();
        rem = trim(rem);
    }
    Ok((trim(quo), rem))
}

/// Exact division; errors on a nonzero remainder.
pub fn div_exact<R: Ring>(num: &[R], den: &[R]) -> Result<Vec<R>, ExactError> {
    let (q, r) = divrem(num, den)?;
    if !r.is_empty() {
        return Err(ExactError::InexactDivision);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, Rational};

    fn p(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&n| int(n)).collect()
    }

    #[test]
    fn division() {
        let n = mul(&p(&[1, 1]), &p(&[-2, 0, 1]));
        assert_eq!(div_exact(&n, &p(&[1, 1])).unwrap(), p(&[-2, 0, 1]));
        let (q, r) = divrem(&p(&[1, 0, 1]), &p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
        assert!(div_exact(&p(&[1, 0, 1]), &p(&[1, 1])).is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(from_roots(&p(&[1, 2, 3])), p(&[-6, 11, -6, 1]));
        assert_eq!(eval(&p(&[-6, 11, -6, 1]), &int(2)), int(0));
        assert_eq!(deriv(&p(&[1, 2, 3])), p(&[2, 6]));
    }
}
