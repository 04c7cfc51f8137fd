//! Deterministic pseudo-random test data from a fixed seed.

use qtwist_core::{GaussianRational, HbarPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::PolyFunction;

/// Seeded generator of small polynomials with exact coefficients.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    nvars: usize,
    order: usize,
}

impl Sampler {
    pub fn new(seed: u64, nvars: usize, order: usize) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), nvars, order }
    }

    /// A nonzero scalar: a small integer or rational, occasionally imaginary.
    pub fn scalar(&mut self) -> GaussianRational {
        let mut p: i64 = self.rng.gen_range(-4..=4);
        if p == 0 {
            p = 1;
        }
        let q: i64 = if self.rng.gen_bool(0.25) { self.rng.gen_range(2..=3) } else { 1 };
        if self.rng.gen_bool(0.2) {
            GaussianRational::imag_ratio(p, q)
        } else {
            GaussianRational::ratio(p, q)
        }
    }

    /// A polynomial with at most `max_terms` terms of degree at most
    /// `max_degree`; coefficients are constant in ℏ.
    pub fn poly(&mut self, max_degree: u32, max_terms: usize) -> PolyFunction {
        let mut p = PolyFunction::zero(self.nvars, self.order);
        let terms = self.rng.gen_range(1..=max_terms.max(1));
        for _ in 0..terms {
            let deg = self.rng.gen_range(0..=max_degree);
            let mut e = vec![0u32; self.nvars];
            for _ in 0..deg {
                if self.nvars > 0 {
                    e[self.rng.gen_range(0..self.nvars)] += 1;
                }
            }
            let c = self.scalar();
            p.add_term(e, HbarPoly::constant(c, self.order));
        }
        if p.is_zero() {
            PolyFunction::one(self.nvars, self.order)
        } else {
            p
        }
    }

    /// A polynomial whose coefficients may carry positive powers of ℏ.
    pub fn hbar_poly(&mut self, max_degree: u32, max_terms: usize) -> PolyFunction {
        let mut p = PolyFunction::zero(self.nvars, self.order);
        for (e, c) in self.poly(max_degree, max_terms).terms() {
            let k = self.rng.gen_range(0..=self.order.min(2));
            p.add_term(e.clone(), c.shift(k));
        }
        if p.is_zero() {
            PolyFunction::one(self.nvars, self.order)
        } else {
            p
        }
    }

    pub fn pairs(&mut self, count: usize, max_degree: u32) -> Vec<(PolyFunction, PolyFunction)> {
        (0..count).map(|_| (self.poly(max_degree, 3), self.poly(max_degree, 3))).collect()
    }

    /// Uniform index below `n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }
}
