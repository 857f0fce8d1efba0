//! Deterministic low-discrepancy probe spectra.
//!
//! Points come from the Halton sequence (one prime base per eigenvalue),
//! started at an offset derived from the seed. Every coordinate is a
//! rational with a prime-power denominator, so the same plan feeds the exact
//! and the floating backends.

use num_traits::{One, Zero};

use crate::matrixhgf::EigenSpectrum;
use crate::scalar::{ratio, Rational, Scalar};

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// `k`-th term of the van der Corput sequence in `base`, in `[0, 1)`.
pub fn van_der_corput(mut k: u64, base: u64) -> Rational {
    let mut value = Rational::zero();
    let mut scale = Rational::one();
    let b = Rational::from_integer((base as i64).into());
    while k > 0 {
        scale /= b.clone();
        value += scale.clone() * Rational::from_integer(((k % base) as i64).into());
        k /= base;
    }
    value
}

/// Sampling plan for `count` spectra of size `m` in the box `[low, high]^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbePlan {
    pub m: usize,
    pub count: usize,
    pub low: Rational,
    pub high: Rational,
    pub seed: u64,
    /// Minimum distance between eigenvalues of one probe.
    pub min_gap: Rational,
}

impl ProbePlan {
    /// Interior of the unit box, `(1/20, 19/20)^m`.
    pub fn new(m: usize, count: usize, seed: u64) -> Self {
        assert!(m <= PRIMES.len(), "at most {} eigenvalues", PRIMES.len());
        ProbePlan { m, count, low: ratio(1, 20), high: ratio(19, 20), seed, min_gap: ratio(1, 100) }
    }

    pub fn range(mut self, low: Rational, high: Rational) -> Self {
        self.low = low;
        self.high = high;
        self
    }

    pub fn min_gap(mut self, gap: Rational) -> Self {
        self.min_gap = gap;
        self
    }

    /// Sorted-descending eigenvalue lists; probes with nearly equal eigenvalues are skipped.
    pub fn points(&self) -> Vec<Vec<Rational>> {
        let width = self.high.clone() - self.low.clone();
        let mut out = Vec::with_capacity(self.count);
        let mut k = 1 + self.seed.wrapping_mul(7919) % 100_003;
        while out.len() < self.count {
            let mut p: Vec<Rational> = (0..self.m)
                .map(|i| self.low.clone() + width.clone() * van_der_corput(k, PRIMES[i]))
                .collect();
            k += 1;
            p.sort_by(|x, y| y.cmp(x));
            if p.windows(2).all(|w| w[0].clone() - w[1].clone() >= self.min_gap) {
                out.push(p);
            }
        }
        out
    }

    pub fn spectra<S: Scalar>(&self) -> Vec<EigenSpectrum<S>> {
        self.points()
            .into_iter()
            .map(|p| EigenSpectrum::new(p.iter().map(S::from_ratio).collect()).expect("m ≥ 1"))
            .collect()
    }
}
