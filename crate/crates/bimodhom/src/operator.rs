//! Matrices of differential operators between module shapes.

use qtwist_core::{GaussianRational, HbarPoly};
use qtwist_repr::{DiffOperator, PolyFunction};

use crate::error::BimodError;
use crate::shape::{ModuleVec, Shape};

/// A `k`-linear map between two module shapes with the same number of
/// coordinate blocks: a `rank(target) × rank(source)` matrix whose entries
/// are differential operators in normal form. Every operator `a·(h▷−)` is
/// such an entry, and the class is closed under composition, sums, tensor
/// products and the Hopf actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomOperator {
    source: Shape,
    target: Shape,
    nvars: usize,
    order: usize,
    entries: Vec<DiffOperator>,
}

impl HomOperator {
    pub fn zero(source: Shape, target: Shape, nvars: usize, order: usize) -> Self {
        assert_eq!(source.blocks(), target.blocks(), "source and target must have the same block count");
        let entries = vec![DiffOperator::zero(nvars, order); source.rank() * target.rank()];
        Self { source, target, nvars, order, entries }
    }

    /// The diagonal operator applying `d` to every component; `source` and
    /// `target` must have equal ranks.
    pub fn diagonal(source: Shape, target: Shape, d: &DiffOperator) -> Self {
        assert_eq!(source.rank(), target.rank(), "diagonal operator needs equal ranks");
        let mut out = Self::zero(source, target, d.nvars(), d.order());
        let n = out.source.rank();
        for i in 0..n {
            out.entries[i * n + i] = d.clone();
        }
        out
    }

    /// Builds an operator from row-major entries.
    pub fn from_entries(source: Shape, target: Shape, entries: Vec<DiffOperator>) -> Result<Self, BimodError> {
        if entries.len() != source.rank() * target.rank() {
            return Err(BimodError::Rank(format!(
                "{} entries for a {}×{} matrix",
                entries.len(),
                target.rank(),
                source.rank()
            )));
        }
        if source.blocks() != target.blocks() {
            return Err(BimodError::Shape(format!("{source} and {target} have different block counts")));
        }
        let first = entries.first().ok_or_else(|| BimodError::Rank("empty matrix".into()))?;
        let (nvars, order) = (first.nvars(), first.order());
        Ok(Self { source, target, nvars, order, entries })
    }

    pub fn source(&self) -> &Shape {
        &self.source
    }

    pub fn target(&self) -> &Shape {
        &self.target
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &DiffOperator {
        &self.entries[i * self.cols() + j]
    }

    pub fn entries(&self) -> &[DiffOperator] {
        &self.entries
    }

    pub fn set_entry(&mut self, i: usize, j: usize, d: DiffOperator) {
        let c = self.cols();
        self.entries[i * c + j] = d;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(DiffOperator::is_zero)
    }

    /// The lowest power of `ℏ` in any entry, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.entries.iter().filter_map(DiffOperator::valuation).min()
    }

    /// The same matrix viewed between other shapes of equal ranks.
    pub fn reshaped(&self, source: Shape, target: Shape) -> Self {
        assert_eq!(source.rank(), self.source.rank());
        assert_eq!(target.rank(), self.target.rank());
        Self { source, target, ..self.clone() }
    }

    fn same_type(&self, o: &Self) {
        assert_eq!(self.source, o.source, "sources differ");
        assert_eq!(self.target, o.target, "targets differ");
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        self.same_type(o);
        for (a, b) in self.entries.iter_mut().zip(&o.entries) {
            if !b.is_zero() {
                a.add_assign(b);
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(DiffOperator::neg)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        self.map(|d| d.scale(s))
    }

    pub fn scale_series(&self, s: &HbarPoly) -> Self {
        self.map(|d| d.scale_series(s))
    }

    fn map(&self, f: impl Fn(&DiffOperator) -> DiffOperator) -> Self {
        Self { entries: self.entries.iter().map(f).collect(), ..self.clone() }
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Result<Self, BimodError> {
        if self.source.rank() != o.target.rank() {
            return Err(BimodError::Rank(format!("cannot compose {} after {}", self.source, o.target)));
        }
        let (n, m, k) = (self.rows(), self.cols(), o.cols());
        let mut out = Self::zero(o.source.clone(), self.target.clone(), self.nvars, self.order);
        for i in 0..n {
            for l in 0..k {
                let mut acc = DiffOperator::zero(self.nvars, self.order);
                for j in 0..m {
                    let (a, b) = (self.entry(i, j), o.entry(j, l));
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_assign(&a.compose(b));
                    }
                }
                out.entries[i * k + l] = acc;
            }
        }
        Ok(out)
    }

    /// `d ∘ self` for a diagonal operator `d`.
    pub fn pre_scalar(&self, d: &DiffOperator) -> Self {
        self.map(|e| if e.is_zero() { e.clone() } else { d.compose(e) })
    }

    /// `self ∘ d` for a diagonal operator `d`.
    pub fn post_scalar(&self, d: &DiffOperator) -> Self {
        self.map(|e| if e.is_zero() { e.clone() } else { e.compose(d) })
    }

    /// `self ⊗ o` acting on `source ⊗ o.source`, with `o` on the following
    /// coordinate blocks (Kronecker product of matrices).
    pub fn tensor(&self, o: &Self) -> Self {
        let source = Shape::tensor(&self.source, &o.source);
        let target = Shape::tensor(&self.target, &o.target);
        let nvars = self.nvars + o.nvars;
        let mut out = Self::zero(source, target, nvars, self.order);
        let (r1, c1, r2, c2) = (self.rows(), self.cols(), o.rows(), o.cols());
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self.entry(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = o.entry(k, l);
                        if !b.is_zero() {
                            out.entries[(i * r2 + k) * (c1 * c2) + j * c2 + l] = a.tensor(b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a vector.
    pub fn apply(&self, v: &ModuleVec) -> Result<ModuleVec, BimodError> {
        if v.shape().rank() != self.cols() {
            return Err(BimodError::Rank(format!("operator on {} applied to {}", self.source, v.shape())));
        }
        let mut comps = Vec::with_capacity(self.rows());
        for i in 0..self.rows() {
            let mut acc = PolyFunction::zero(self.nvars, self.order);
            for (j, c) in v.comps().iter().enumerate() {
                let e = self.entry(i, j);
                if !e.is_zero() && !c.is_zero() {
                    acc.add_assign(&e.apply(c));
                }
            }
            comps.push(acc);
        }
        ModuleVec::new(self.target.clone(), comps)
    }

    /// Applies `restrict_to_diagonal` entrywise: the operator
    /// `u ↦ (self(u ⊗ 1 ⊗ … ⊗ 1))|_{diagonal}` between single-block shapes.
    pub fn restrict_to_diagonal(&self) -> Self {
        let copies = self.source.blocks();
        let entries: Vec<DiffOperator> = self.entries.iter().map(|e| e.restrict_to_diagonal(copies)).collect();
        let nvars = self.nvars / copies;
        Self {
            source: Shape::Leaf(self.source.rank()),
            target: Shape::Leaf(self.target.rank()),
            nvars,
            order: self.order,
            entries,
        }
    }

    /// Renders the first nonzero entry term as a residual witness.
    pub fn first_term(&self, names: &[String]) -> Option<String> {
        let c = self.cols();
        self.entries
            .iter()
            .enumerate()
            .find_map(|(k, e)| e.first_term(names).map(|t| format!("[{},{}] {t}", k / c, k % c)))
    }
}
