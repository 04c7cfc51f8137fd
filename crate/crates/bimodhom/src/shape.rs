//! Module shapes (bracketed tensor products of free modules) and their
//! vectors.

use std::fmt;

use qtwist_repr::PolyFunction;

use crate::error::BimodError;

/// A bracketed tensor product of free modules `A^m`. Each leaf occupies one
/// block of the carrier's coordinates; a vector of the shape has
/// `rank()` polynomial components in `blocks()·d` variables, with tensor
/// components flattened as `i·rank(right) + j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Leaf(usize),
    Tensor(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn leaf(rank: usize) -> Self {
        Shape::Leaf(rank)
    }

    pub fn tensor(a: &Shape, b: &Shape) -> Self {
        Shape::Tensor(Box::new(a.clone()), Box::new(b.clone()))
    }

    pub fn rank(&self) -> usize {
        match self {
            Shape::Leaf(m) => *m,
            Shape::Tensor(a, b) => a.rank() * b.rank(),
        }
    }

    pub fn blocks(&self) -> usize {
        match self {
            Shape::Leaf(_) => 1,
            Shape::Tensor(a, b) => a.blocks() + b.blocks(),
        }
    }

    /// The same bracketing with all ranks set to one; the Hopf action only
    /// depends on this skeleton.
    pub fn skeleton(&self) -> Shape {
        match self {
            Shape::Leaf(_) => Shape::Leaf(1),
            Shape::Tensor(a, b) => Shape::tensor(&a.skeleton(), &b.skeleton()),
        }
    }

    /// The two factors of a tensor shape.
    pub fn factors(&self) -> Result<(&Shape, &Shape), BimodError> {
        match self {
            Shape::Tensor(a, b) => Ok((a, b)),
            Shape::Leaf(_) => Err(BimodError::Shape(format!("{self} is not a tensor product"))),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Leaf(m) => write!(f, "A^{m}"),
            Shape::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
        }
    }
}

/// A vector of a module shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVec {
    shape: Shape,
    comps: Vec<PolyFunction>,
}

impl ModuleVec {
    pub fn new(shape: Shape, comps: Vec<PolyFunction>) -> Result<Self, BimodError> {
        if comps.len() != shape.rank() {
            return Err(BimodError::Rank(format!("{} components for {shape}", comps.len())));
        }
        Ok(Self { shape, comps })
    }

    pub fn zero(shape: Shape, nvars: usize, order: usize) -> Self {
        let comps = vec![PolyFunction::zero(nvars, order); shape.rank()];
        Self { shape, comps }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn comps(&self) -> &[PolyFunction] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(PolyFunction::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.shape, o.shape, "shapes differ");
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect();
        Self { shape: self.shape.clone(), comps }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.shape, o.shape, "shapes differ");
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.sub(b)).collect();
        Self { shape: self.shape.clone(), comps }
    }

    pub fn map(&self, f: impl Fn(&PolyFunction) -> PolyFunction) -> Self {
        Self { shape: self.shape.clone(), comps: self.comps.iter().map(f).collect() }
    }

    /// `v ⊗ w` with `w` on the following coordinate blocks.
    pub fn tensor(&self, o: &Self) -> Self {
        let mut comps = Vec::with_capacity(self.comps.len() * o.comps.len());
        for a in &self.comps {
            for b in &o.comps {
                comps.push(a.tensor(b));
            }
        }
        Self { shape: Shape::tensor(&self.shape, &o.shape), comps }
    }

    pub fn nvars(&self) -> usize {
        self.comps.first().map_or(0, PolyFunction::nvars)
    }

    /// Renders the first nonzero component term as a residual witness.
    pub fn first_term(&self, names: &[String]) -> Option<String> {
        self.comps
            .iter()
            .enumerate()
            .find_map(|(i, c)| c.first_term(names).map(|t| format!("[{i}] {t}")))
    }
}
