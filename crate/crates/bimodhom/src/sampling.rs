//! Seeded random operators and vectors for the identity suites.

use qtwist_core::TensorElement;
use qtwist_repr::{DiffOperator, PolyFunction, Sampler};

use crate::calculus::HomCalculus;
use crate::error::BimodError;
use crate::operator::HomOperator;
use crate::shape::{ModuleVec, Shape};

/// Size limits for sampled operator entries `Σ a·(h ▷ ·)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleProfile {
    /// Maximal degree of the coefficient polynomials `a`.
    pub coefficient_degree: u32,
    /// Maximal PBW degree of the acting monomials `h`.
    pub monomial_degree: usize,
    /// Maximal number of terms per entry.
    pub max_terms: usize,
    /// Probability that an entry is nonzero.
    pub density: f64,
}

impl SampleProfile {
    /// Degree-two coefficients and monomials, up to three terms per entry.
    pub const STANDARD: Self = Self { coefficient_degree: 2, monomial_degree: 2, max_terms: 3, density: 0.8 };
    /// First-order entries with at most two terms, for identities whose
    /// composites grow quickly on tensor shapes.
    pub const LIGHT: Self = Self { coefficient_degree: 1, monomial_degree: 1, max_terms: 2, density: 0.6 };
}

/// Draws operators whose entries are short sums `a·(h ▷ ·)` with `a` a
/// polynomial and `h` a PBW monomial, within a [`SampleProfile`]; vectors
/// have components of degree at most two.
pub struct OperatorSampler<'a> {
    calc: &'a HomCalculus,
    rng: Sampler,
    profile: SampleProfile,
    monomials: Vec<TensorElement>,
}

impl<'a> OperatorSampler<'a> {
    pub fn new(calc: &'a HomCalculus, seed: u64) -> Self {
        Self::with_profile(calc, seed, SampleProfile::STANDARD)
    }

    pub fn with_profile(calc: &'a HomCalculus, seed: u64, profile: SampleProfile) -> Self {
        let mut monomials = vec![calc.hopf().unit(1)];
        monomials.extend(calc.hopf().sample_monomials(profile.monomial_degree));
        let rng = Sampler::new(seed, calc.block_dim(), calc.order());
        Self { calc, rng, profile, monomials }
    }

    pub fn rng(&mut self) -> &mut Sampler {
        &mut self.rng
    }

    /// A polynomial on the carrier's first block.
    pub fn poly(&mut self) -> PolyFunction {
        self.rng.poly(2, 3)
    }

    /// A polynomial within the profile's coefficient degree.
    pub fn coefficient(&mut self) -> PolyFunction {
        self.rng.poly(self.profile.coefficient_degree, 2)
    }

    /// One entry `Σ a·(h ▷ ·)` on a single block.
    pub fn entry(&mut self) -> Result<DiffOperator, BimodError> {
        let mut out = DiffOperator::zero(self.calc.block_dim(), self.calc.order());
        let terms = 1 + self.rng.index(self.profile.max_terms);
        for _ in 0..terms {
            let a = self.coefficient();
            let h = self.monomials[self.rng.index(self.monomials.len())].clone();
            out.add_assign(&self.calc.rho(&Shape::Leaf(1), &h)?.left_mul(&a));
        }
        Ok(out)
    }

    /// A random operator between single-block shapes of the given ranks.
    pub fn operator(&mut self, source: usize, target: usize) -> Result<HomOperator, BimodError> {
        let mut entries = Vec::with_capacity(source * target);
        for _ in 0..source * target {
            entries.push(if self.rng.coin(self.profile.density) {
                self.entry()?
            } else {
                DiffOperator::zero(self.calc.block_dim(), self.calc.order())
            });
        }
        HomOperator::from_entries(Shape::Leaf(source), Shape::Leaf(target), entries)
    }

    /// A random vector of a single-block shape.
    pub fn vector(&mut self, rank: usize) -> ModuleVec {
        let comps = (0..rank).map(|_| self.rng.poly(2, 3)).collect();
        ModuleVec::new(Shape::Leaf(rank), comps).expect("rank matches")
    }

    /// An equivariant map: a scalar matrix combined with actions of central
    /// monomials.
    pub fn equivariant(&mut self, source: usize, target: usize) -> Result<HomOperator, BimodError> {
        let lie = self.calc.hopf().lie().clone();
        let n = lie.len() as u16;
        let central: Vec<u16> = (0..n).filter(|&g| (0..n).all(|k| lie.commutes(g, k))).collect();
        let mut entries = Vec::with_capacity(source * target);
        for _ in 0..source * target {
            let mut e = DiffOperator::identity(self.calc.block_dim(), self.calc.order()).scale(&self.rng.scalar());
            if !central.is_empty() && self.rng.coin(0.5) {
                let g = central[self.rng.index(central.len())];
                e = e.add(&self.calc.rho(&Shape::Leaf(1), &self.calc.hopf().generator(g))?.scale(&self.rng.scalar()));
            }
            entries.push(e);
        }
        HomOperator::from_entries(Shape::Leaf(source), Shape::Leaf(target), entries)
    }
}
