//! 2x2 matrices over a ring.

use std::fmt;

use super::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<R> {
    pub e: [[R; 2]; 2],
}

impl<R: Ring> Mat2<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        Mat2 { e: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        Mat2::new(R::zero(), R::zero(), R::zero(), R::zero())
    }

    pub fn identity() -> Self {
        Mat2::new(R::one(), R::zero(), R::zero(), R::one())
    }

    /// 0-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.e[i][j]
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> Mat2<S> {
        Mat2::new(f(&self.e[0][0]), f(&self.e[0][1]), f(&self.e[1][0]), f(&self.e[1][1]))
    }

    pub fn try_map<S: Ring, E, F: Fn(&R) -> Result<S, E>>(&self, f: F) -> Result<Mat2<S>, E> {
        Ok(Mat2::new(f(&self.e[0][0])?, f(&self.e[0][1])?, f(&self.e[1][0])?, f(&self.e[1][1])?))
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat2::new(
            self.e[0][0].plus(&o.e[0][0]),
            self.e[0][1].plus(&o.e[0][1]),
            self.e[1][0].plus(&o.e[1][0]),
            self.e[1][1].plus(&o.e[1][1]),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.map(|x| x.negate()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = |i: usize, j: usize| self.e[i][0].times(&o.e[0][j]).plus(&self.e[i][1].times(&o.e[1][j]));
        Mat2::new(m(0, 0), m(0, 1), m(1, 0), m(1, 1))
    }

    pub fn scale_by(&self, r: &R) -> Self {
        self.map(|x| x.times(r))
    }

    /// `[self, o] = self*o - o*self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn det(&self) -> R {
        self.e[0][0].times(&self.e[1][1]).minus(&self.e[0][1].times(&self.e[1][0]))
    }

    pub fn trace(&self) -> R {
        self.e[0][0].plus(&self.e[1][1])
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(|x| x.is_zero())
    }

    /// `(i, j)` positions of nonzero entries.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                if !self.e[i][j].is_zero() {
                    v.push((i, j));
                }
            }
        }
        v
    }
}

impl<R: Ring> fmt::Display for Mat2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}
