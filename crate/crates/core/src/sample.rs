//! Seeded generation of small rational test points.
//!
//! Every trial gets its own SplitMix64 stream derived from `(seed, stream)`,
//! so results do not depend on how trials are scheduled across threads.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::exact::{int, rat, Rational};

pub struct Sampler {
    rng: SplitMix64,
    shift: i64,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mixed = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        Sampler { rng: SplitMix64::seed_from_u64(mixed), shift: (seed % 5) as i64 - 2 }
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.next_u64() % n
    }

    /// `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// `+-n/d` with `n` in `1..=9` and `d` in `1..=4`.
    pub fn small_rational(&mut self) -> Rational {
        let n = self.int_in(1, 9);
        let d = self.int_in(1, 4);
        let sign = if self.below(2) == 0 { 1 } else { -1 };
        rat(sign * n, d)
    }

    pub fn small_rationals(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.small_rational()).collect()
    }

    /// `n` distinct integers from `1..=9`, all shifted by a seed-dependent
    /// offset. Repeats are rejected and redrawn.
    pub fn distinct_small_ints(&mut self, n: usize) -> Vec<Rational> {
        assert!(n <= 9, "at most nine distinct values are available");
        let mut out: Vec<i64> = Vec::with_capacity(n);
        while out.len() < n {
            let v = self.int_in(1, 9) + self.shift;
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out.into_iter().map(int).collect()
    }

    /// `n` distinct values of the form `+-n/d`.
    pub fn distinct_small_rationals(&mut self, n: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        while out.len() < n {
            let v = self.small_rational();
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_distinct() {
        let a = Sampler::new(42, 3).distinct_small_ints(6);
        let b = Sampler::new(42, 3).distinct_small_ints(6);
        assert_eq!(a, b);
        for i in 0..a.len() {
            for j in 0..i {
                assert_ne!(a[i], a[j]);
            }
        }
        assert_ne!(Sampler::new(42, 4).small_rationals(8), Sampler::new(42, 3).small_rationals(8));
    }
}
