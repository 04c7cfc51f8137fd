//! Lie-algebra actions by derivations on polynomial functions, extended to
//! the enveloping algebra by composition.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use qtwist_core::{Gen, HbarPoly, LiePresentation, PbwMonomial, TensorElement};
use qtwist_hopf::{RepDescriptor, Report};

use crate::diffop::DiffOperator;
use crate::error::ReprError;
use crate::poly::{monomials_up_to, PolyFunction};

/// Anchor tag of the bracket-compatibility check.
pub const ANCHOR_REP_BRACKET: &str = "derivation-representation";

/// A representation `ρ` of a Lie algebra by first-order differential
/// operators on `ℚ(i)[x¹..x^d][ℏ]`, extended multiplicatively to PBW
/// monomials (`ρ(g₁g₂⋯) = ρ(g₁)∘ρ(g₂)∘⋯`). Images of monomials are memoized.
#[derive(Debug)]
pub struct DerivationRep {
    lie: Arc<LiePresentation>,
    coordinates: Vec<String>,
    order: usize,
    images: Vec<Option<DiffOperator>>,
    cache: Mutex<HashMap<PbwMonomial, Arc<DiffOperator>>>,
}

impl Clone for DerivationRep {
    fn clone(&self) -> Self {
        Self::from_operators(self.lie.clone(), self.coordinates.clone(), self.order, self.images.clone())
    }
}

impl DerivationRep {
    /// Builds the representation from a preset descriptor.
    pub fn from_descriptor(desc: &RepDescriptor, lie: Arc<LiePresentation>, order: usize) -> Self {
        let d = desc.coordinates.len();
        let mut images: Vec<Option<DiffOperator>> = vec![None; lie.len()];
        for (g, terms) in desc.images.iter().enumerate().take(lie.len()) {
            let mut op = DiffOperator::zero(d, order);
            for t in terms {
                let mut coeff = PolyFunction::zero(d, order);
                for (e, c) in &t.coefficient {
                    coeff.add_term(e.clone(), HbarPoly::constant(c.clone(), order));
                }
                op.add_assign(&DiffOperator::partial(d, order, t.coordinate).left_mul(&coeff));
            }
            images[g] = Some(op);
        }
        Self::from_operators(lie, desc.coordinates.clone(), order, images)
    }

    /// Builds the representation from explicit generator images; `None`
    /// marks a generator without an image.
    pub fn from_operators(
        lie: Arc<LiePresentation>,
        coordinates: Vec<String>,
        order: usize,
        images: Vec<Option<DiffOperator>>,
    ) -> Self {
        Self { lie, coordinates, order, images, cache: Mutex::new(HashMap::new()) }
    }

    /// A copy with the image of generator `g` replaced.
    pub fn with_image(&self, g: Gen, op: DiffOperator) -> Self {
        let mut images = self.images.clone();
        images[g as usize] = Some(op);
        Self::from_operators(self.lie.clone(), self.coordinates.clone(), self.order, images)
    }

    pub fn lie(&self) -> &Arc<LiePresentation> {
        &self.lie
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    pub fn nvars(&self) -> usize {
        self.coordinates.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Image of a generator.
    pub fn generator_image(&self, g: Gen) -> Result<&DiffOperator, ReprError> {
        self.images
            .get(g as usize)
            .and_then(Option::as_ref)
            .ok_or_else(|| ReprError::MissingImage(self.lie.name(g).to_string()))
    }

    /// `ρ(m)` for a PBW monomial.
    pub fn rho_monomial(&self, m: &PbwMonomial) -> Result<Arc<DiffOperator>, ReprError> {
        if let Some(op) = self.cache.lock().unwrap().get(m) {
            return Ok(op.clone());
        }
        let op = match m.factors().split_first() {
            None => DiffOperator::identity(self.nvars(), self.order),
            Some((&g, rest)) => {
                let tail = self.rho_monomial(&PbwMonomial::from_sorted(rest.to_vec()))?;
                self.generator_image(g)?.compose(&tail)
            }
        };
        let op = Arc::new(op);
        self.cache.lock().unwrap().insert(m.clone(), op.clone());
        Ok(op)
    }

    /// `ρ(h)` for a one-leg element.
    pub fn rho(&self, h: &TensorElement) -> Result<DiffOperator, ReprError> {
        if h.legs() != 1 {
            return Err(ReprError::Shape(format!("expected a one-leg element, got {} legs", h.legs())));
        }
        let mut out = DiffOperator::zero(self.nvars(), self.order);
        for (key, c) in h.terms() {
            out.add_assign(&self.rho_monomial(&key[0])?.scale_series(c));
        }
        Ok(out)
    }

    /// `m ▷ a`, applying the generator images right to left.
    pub fn act_monomial(&self, m: &PbwMonomial, a: &PolyFunction) -> Result<PolyFunction, ReprError> {
        let mut out = a.clone();
        for &g in m.factors().iter().rev() {
            if out.is_zero() {
                break;
            }
            out = self.generator_image(g)?.apply(&out);
        }
        Ok(out)
    }

    /// `h ▷ a` for a one-leg element.
    pub fn act(&self, h: &TensorElement, a: &PolyFunction) -> Result<PolyFunction, ReprError> {
        if h.legs() != 1 {
            return Err(ReprError::Shape(format!("expected a one-leg element, got {} legs", h.legs())));
        }
        let mut out = PolyFunction::zero(self.nvars(), self.order);
        for (key, c) in h.terms() {
            out.add_assign(&self.act_monomial(&key[0], a)?.scale_series(c));
        }
        Ok(out)
    }

    /// `ρ^{⊗k}(X)` for a `k`-leg element, acting on `k` blocks of the
    /// carrier's coordinates (leg `i` on block `i`).
    pub fn rho_legs(&self, x: &TensorElement) -> Result<DiffOperator, ReprError> {
        let k = x.legs();
        let d = self.nvars();
        let mut out = DiffOperator::zero(k * d, self.order);
        for (key, c) in x.terms() {
            let mut op = DiffOperator::identity(0, self.order);
            for m in key {
                op = op.tensor(&*self.rho_monomial(m)?);
            }
            out.add_assign(&op.scale_series(c));
        }
        Ok(out)
    }
}

/// Verifies `ρ([ξ,η]) = ρ(ξ)∘ρ(η) − ρ(η)∘ρ(ξ)` for every pair of generators
/// on all coordinate monomials of degree at most `degree_bound`.
pub fn check_rep_bracket(rep: &DerivationRep, degree_bound: u32) -> Report {
    Report::timed("representation bracket", ANCHOR_REP_BRACKET, || {
        let d = rep.nvars();
        let order = rep.order();
        let coords: Vec<usize> = (0..d).collect();
        let samples = monomials_up_to(d, order, &coords, degree_bound);
        let lie = rep.lie().clone();
        let n = lie.len() as Gen;
        for i in 0..n {
            for j in (i + 1)..n {
                let (ri, rj) = match (rep.generator_image(i), rep.generator_image(j)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => return Some(e.to_string()),
                };
                let mut bracket = DiffOperator::zero(d, order);
                for (k, c) in lie.bracket(i, j) {
                    match rep.generator_image(*k) {
                        Ok(op) => bracket.add_assign(&op.scale(c)),
                        Err(e) => return Some(e.to_string()),
                    }
                }
                for p in &samples {
                    let lhs = bracket.apply(p);
                    let rhs = ri.apply(&rj.apply(p)).sub(&rj.apply(&ri.apply(p)));
                    let diff = lhs.sub(&rhs);
                    if let Some(t) = diff.first_term(rep.coordinates()) {
                        return Some(format!(
                            "[{}, {}] on {}: {t}",
                            lie.name(i),
                            lie.name(j),
                            p.render(rep.coordinates())
                        ));
                    }
                }
            }
        }
        None
    })
}
