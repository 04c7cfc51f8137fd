//! Function algebras carrying a Hopf action, with products deformed by a
//! cochain twist.

use std::collections::HashMap;
use std::sync::Arc;

use qtwist_core::{PbwMonomial, TensorElement};
use qtwist_hopf::{preset, CochainTwist, Preset, PresetParams, QuasiHopfData, Report};

use crate::diffop::DiffOperator;
use crate::error::ReprError;
use crate::poly::PolyFunction;
use crate::rep::DerivationRep;

pub const ANCHOR_CLASSICAL_LIMIT: &str = "star-classical-limit";
pub const ANCHOR_BRAIDED_COMMUTATIVITY: &str = "braided-commutativity";
pub const ANCHOR_EQUIVARIANCE: &str = "star-equivariance";
pub const ANCHOR_COUNIT: &str = "action-counit";
pub const ANCHOR_WEAK_ASSOCIATIVITY: &str = "weak-associativity";

/// A polynomial function algebra with an action of `hopf`. Without a twist
/// the product is pointwise; with a twist `F` it is
/// `a ⋆ b = (F⁻¹₍₁₎▷a)(F⁻¹₍₂₎▷b)` and `hopf` is the twisted algebra `H_F`.
#[derive(Clone, Debug)]
pub struct AlgebraObject {
    hopf: QuasiHopfData,
    rep: Arc<DerivationRep>,
    twist: Option<CochainTwist>,
}

/// Caches `m ▷ a` for one fixed `a`.
struct ActionCache<'a> {
    rep: &'a DerivationRep,
    a: &'a PolyFunction,
    memo: HashMap<PbwMonomial, PolyFunction>,
}

impl<'a> ActionCache<'a> {
    fn new(rep: &'a DerivationRep, a: &'a PolyFunction) -> Self {
        Self { rep, a, memo: HashMap::new() }
    }

    fn get(&mut self, m: &PbwMonomial) -> Result<&PolyFunction, ReprError> {
        if !self.memo.contains_key(m) {
            let v = self.rep.act_monomial(m, self.a)?;
            self.memo.insert(m.clone(), v);
        }
        Ok(&self.memo[m])
    }
}

impl AlgebraObject {
    pub fn new(hopf: QuasiHopfData, rep: Arc<DerivationRep>, twist: Option<CochainTwist>) -> Self {
        Self { hopf, rep, twist }
    }

    /// The commutative algebra of a preset over the untwisted `H`.
    pub fn untwisted(p: &Preset) -> Self {
        let rep = DerivationRep::from_descriptor(&p.rep, p.base.lie().clone(), p.base.order());
        Self::new(p.base.clone(), Arc::new(rep), None)
    }

    /// The deformed algebra `A_F` of a preset over `H_F`.
    pub fn twisted(p: &Preset) -> Result<Self, ReprError> {
        let rep = DerivationRep::from_descriptor(&p.rep, p.base.lie().clone(), p.base.order());
        Ok(Self::new(p.twisted()?, Arc::new(rep), Some(p.twist.clone())))
    }

    /// Builds the preset and its deformed algebra.
    pub fn from_params(params: &PresetParams, order: usize) -> Result<(Preset, Self), ReprError> {
        let p = preset(params, order)?;
        let a = Self::twisted(&p)?;
        Ok((p, a))
    }

    pub fn hopf(&self) -> &QuasiHopfData {
        &self.hopf
    }

    pub fn rep(&self) -> &Arc<DerivationRep> {
        &self.rep
    }

    pub fn twist(&self) -> Option<&CochainTwist> {
        self.twist.as_ref()
    }

    pub fn nvars(&self) -> usize {
        self.rep.nvars()
    }

    pub fn order(&self) -> usize {
        self.hopf.order()
    }

    pub fn coordinates(&self) -> &[String] {
        self.rep.coordinates()
    }

    pub fn one(&self) -> PolyFunction {
        PolyFunction::one(self.nvars(), self.order())
    }

    pub fn coordinate(&self, i: usize) -> PolyFunction {
        PolyFunction::coordinate(self.nvars(), self.order(), i)
    }

    /// `h ▷ a`.
    pub fn act(&self, h: &TensorElement, a: &PolyFunction) -> Result<PolyFunction, ReprError> {
        self.rep.act(h, a)
    }

    /// `Σ (X₍₁₎▷a)(X₍₂₎▷b)` for a two-leg element `X`.
    pub fn pair_apply(&self, x: &TensorElement, a: &PolyFunction, b: &PolyFunction) -> Result<PolyFunction, ReprError> {
        if x.legs() != 2 {
            return Err(ReprError::Shape(format!("expected a two-leg element, got {} legs", x.legs())));
        }
        let mut ca = ActionCache::new(&self.rep, a);
        let mut cb = ActionCache::new(&self.rep, b);
        let mut out = PolyFunction::zero(self.nvars(), self.order());
        for (key, c) in x.terms() {
            let pa = ca.get(&key[0])?;
            if pa.is_zero() {
                continue;
            }
            let pa = pa.clone();
            let pb = cb.get(&key[1])?;
            if pb.is_zero() {
                continue;
            }
            out.add_assign(&pa.mul(pb).scale_series(c));
        }
        Ok(out)
    }

    /// The product of the algebra.
    pub fn star(&self, a: &PolyFunction, b: &PolyFunction) -> Result<PolyFunction, ReprError> {
        match &self.twist {
            None => Ok(a.mul(b)),
            Some(t) => self.pair_apply(t.f_inv(), a, b),
        }
    }

    /// `Σ (φ⁽¹⁾▷a) ⋆ ((φ⁽²⁾▷b) ⋆ (φ⁽³⁾▷c))`, the right-bracketed product
    /// corrected by the associator.
    pub fn associated_product(&self, a: &PolyFunction, b: &PolyFunction, c: &PolyFunction) -> Result<PolyFunction, ReprError> {
        let mut out = PolyFunction::zero(self.nvars(), self.order());
        for (key, coeff) in self.hopf.phi().terms() {
            let pa = self.rep.act_monomial(&key[0], a)?;
            let pb = self.rep.act_monomial(&key[1], b)?;
            let pc = self.rep.act_monomial(&key[2], c)?;
            if pa.is_zero() || pb.is_zero() || pc.is_zero() {
                continue;
            }
            out.add_assign(&self.star(&pa, &self.star(&pb, &pc)?)?.scale_series(coeff));
        }
        Ok(out)
    }

    /// `(weak residual, plain defect)`: the weak residual is
    /// `(a⋆b)⋆c − Σ(φ⁽¹⁾▷a)⋆((φ⁽²⁾▷b)⋆(φ⁽³⁾▷c))`, the plain defect is
    /// `(a⋆b)⋆c − a⋆(b⋆c)`.
    pub fn weak_assoc_defect(
        &self,
        a: &PolyFunction,
        b: &PolyFunction,
        c: &PolyFunction,
    ) -> Result<(PolyFunction, PolyFunction), ReprError> {
        let left = self.star(&self.star(a, b)?, c)?;
        let weak = left.sub(&self.associated_product(a, b, c)?);
        let plain = left.sub(&self.star(a, &self.star(b, c)?)?);
        Ok((weak, plain))
    }

    /// The operator `u ↦ a ⋆ u`.
    pub fn left_multiplication(&self, a: &PolyFunction) -> Result<DiffOperator, ReprError> {
        self.multiplication_operator(a, true)
    }

    /// The operator `u ↦ u ⋆ a`.
    pub fn right_multiplication(&self, a: &PolyFunction) -> Result<DiffOperator, ReprError> {
        self.multiplication_operator(a, false)
    }

    fn multiplication_operator(&self, a: &PolyFunction, left: bool) -> Result<DiffOperator, ReprError> {
        let Some(t) = &self.twist else {
            return Ok(DiffOperator::multiplication(a));
        };
        let (fixed, free) = if left { (0, 1) } else { (1, 0) };
        let mut ca = ActionCache::new(&self.rep, a);
        let mut out = DiffOperator::zero(self.nvars(), self.order());
        for (key, c) in t.f_inv().terms() {
            let pa = ca.get(&key[fixed])?;
            if pa.is_zero() {
                continue;
            }
            let pa = pa.scale_series(c);
            out.add_assign(&self.rep.rho_monomial(&key[free])?.left_mul(&pa));
        }
        Ok(out)
    }

    /// Checks that the `ℏ⁰` part of `a ⋆ b` is the pointwise product.
    pub fn check_classical_limit(&self, pairs: &[(PolyFunction, PolyFunction)]) -> Report {
        Report::timed("classical limit", ANCHOR_CLASSICAL_LIMIT, || {
            for (a, b) in pairs {
                let s = match self.star(a, b) {
                    Ok(s) => s,
                    Err(e) => return Some(e.to_string()),
                };
                let diff = s.hbar_coefficient(0).sub(&a.mul(b).hbar_coefficient(0));
                if let Some(t) = diff.first_term(self.coordinates()) {
                    return Some(format!("classical limit: {t}"));
                }
            }
            None
        })
    }

    /// Checks `a⋆b = (R⁽²⁾▷b)⋆(R⁽¹⁾▷a)` on all pairs. The right-hand side is
    /// evaluated through the single element `X = F⁻¹·R₂₁` as
    /// `Σ (X₍₁₎▷b)(X₍₂₎▷a)`, which equals the braided product termwise.
    pub fn check_braided_commutativity(&self, pairs: &[(PolyFunction, PolyFunction)]) -> Result<Report, ReprError> {
        let (r, _) = self.hopf.require_r()?;
        let x = match &self.twist {
            Some(t) => t.f_inv().mul(&r.flip()),
            None => r.flip(),
        };
        Ok(Report::timed("braided commutativity", ANCHOR_BRAIDED_COMMUTATIVITY, || {
            for (a, b) in pairs {
                let lhs = match self.star(a, b) {
                    Ok(v) => v,
                    Err(e) => return Some(e.to_string()),
                };
                let rhs = match self.pair_apply(&x, b, a) {
                    Ok(v) => v,
                    Err(e) => return Some(e.to_string()),
                };
                if let Some(t) = lhs.sub(&rhs).first_term(self.coordinates()) {
                    return Some(format!("braided commutativity: {t}"));
                }
            }
            None
        }))
    }

    /// Checks `h ▷ (a⋆b) = Σ (h₍₁₎▷a)⋆(h₍₂₎▷b)` with the coproduct of `hopf`.
    pub fn check_equivariance(&self, hs: &[TensorElement], pairs: &[(PolyFunction, PolyFunction)]) -> Report {
        Report::timed("star equivariance", ANCHOR_EQUIVARIANCE, || {
            for h in hs {
                let dh = self.hopf.coproduct(h);
                // (h₍₁₎▷a) ⋆ (h₍₂₎▷b) = Σ (F⁻¹h₍₁₎▷a)(F⁻¹h₍₂₎▷b).
                let x = match &self.twist {
                    Some(t) => t.f_inv().mul(&dh),
                    None => dh,
                };
                for (a, b) in pairs {
                    let res = self
                        .star(a, b)
                        .and_then(|s| self.act(h, &s))
                        .and_then(|lhs| Ok(lhs.sub(&self.pair_apply(&x, a, b)?)));
                    match res {
                        Err(e) => return Some(e.to_string()),
                        Ok(d) => {
                            if let Some(t) = d.first_term(self.coordinates()) {
                                return Some(format!("equivariance: {t}"));
                            }
                        }
                    }
                }
            }
            None
        })
    }

    /// Checks `h ▷ 1 = ε(h)·1`.
    pub fn check_counit_compatibility(&self, hs: &[TensorElement]) -> Report {
        Report::timed("action on unit", ANCHOR_COUNIT, || {
            let one = self.one();
            for h in hs {
                let lhs = match self.act(h, &one) {
                    Ok(v) => v,
                    Err(e) => return Some(e.to_string()),
                };
                let rhs = one.scale_series(&self.hopf.counit(h));
                if let Some(t) = lhs.sub(&rhs).first_term(self.coordinates()) {
                    return Some(format!("counit compatibility: {t}"));
                }
            }
            None
        })
    }

    /// Checks that the weak residual vanishes on every triple.
    pub fn check_weak_associativity(&self, triples: &[(PolyFunction, PolyFunction, PolyFunction)]) -> Report {
        Report::timed("weak associativity", ANCHOR_WEAK_ASSOCIATIVITY, || {
            for (a, b, c) in triples {
                match self.weak_assoc_defect(a, b, c) {
                    Err(e) => return Some(e.to_string()),
                    Ok((weak, _)) => {
                        if let Some(t) = weak.first_term(self.coordinates()) {
                            return Some(format!("weak associativity: {t}"));
                        }
                    }
                }
            }
            None
        })
    }
}
