//! Free bimodules `Aᵐ` over a braided commutative algebra `A`: the module
//! actions, `⊗_A` via component products, the bimodule structure of internal
//! homs, the descended braiding and tensor product of homs, and membership
//! of operators in the right `A`-linear homs.

use std::time::Instant;

use qtwist_core::{HbarPoly, PbwMonomial, TensorElement};
use qtwist_hopf::Report;
use qtwist_repr::{monomials_up_to, AlgebraObject, DiffOperator, PolyFunction};

use crate::calculus::{EvalMemo, HomCalculus};
use crate::error::BimodError;
use crate::operator::HomOperator;
use crate::shape::{ModuleVec, Shape};

pub const ANCHOR_HOM_A: &str = "hom-a-membership";

/// The internal-hom calculus over the Hopf algebra acting on `A`, together
/// with the product of `A`.
pub struct BimoduleCalculus {
    calc: HomCalculus,
    algebra: AlgebraObject,
    braid: TensorElement,
}

impl std::fmt::Debug for BimoduleCalculus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BimoduleCalculus").field("calc", &self.calc).finish_non_exhaustive()
    }
}

fn leaf_rank(shape: &Shape) -> Result<usize, BimodError> {
    match shape {
        Shape::Leaf(r) => Ok(*r),
        s => Err(BimodError::Shape(format!("expected a free module Aᵐ, got {s}"))),
    }
}

impl BimoduleCalculus {
    /// Requires an R-matrix (the algebra must be braided commutative).
    pub fn new(algebra: AlgebraObject) -> Result<Self, BimodError> {
        let calc = HomCalculus::for_algebra(&algebra);
        let (r, _) = calc.hopf().require_r()?;
        // `(R²▷u) ⋆ (R¹▷w) = Σ (X₍₁₎▷u)(X₍₂₎▷w)` with `X = F⁻¹·R₂₁`.
        let r21 = r.flip();
        let braid = match algebra.twist() {
            Some(t) => t.f_inv().mul(&r21),
            None => r21,
        };
        Ok(Self { calc, algebra, braid })
    }

    pub fn calc(&self) -> &HomCalculus {
        &self.calc
    }

    pub fn algebra(&self) -> &AlgebraObject {
        &self.algebra
    }

    fn names(&self, blocks: usize) -> Vec<String> {
        self.calc.names(blocks)
    }

    fn mono(&self, m: &PbwMonomial) -> TensorElement {
        let order = self.calc.order();
        TensorElement::monomial(self.calc.hopf().lie().clone(), order, vec![m.clone()], HbarPoly::one(order))
    }

    fn first_term(&self, p: &PolyFunction) -> Option<String> {
        p.first_term(&self.names(1))
    }

    // ---- module actions and ⊗_A ----

    /// `a·v = (a ⋆ v_i)_i`.
    pub fn left_act_vec(&self, a: &PolyFunction, v: &ModuleVec) -> Result<ModuleVec, BimodError> {
        leaf_rank(v.shape())?;
        let comps = v.comps().iter().map(|c| self.algebra.star(a, c)).collect::<Result<Vec<_>, _>>()?;
        ModuleVec::new(v.shape().clone(), comps)
    }

    /// `v·a = (v_i ⋆ a)_i`.
    pub fn right_act_vec(&self, v: &ModuleVec, a: &PolyFunction) -> Result<ModuleVec, BimodError> {
        leaf_rank(v.shape())?;
        let comps = v.comps().iter().map(|c| self.algebra.star(c, a)).collect::<Result<Vec<_>, _>>()?;
        ModuleVec::new(v.shape().clone(), comps)
    }

    /// `v ⊗_A w ∈ A^{mn}` with components `v_i ⋆ w_j` at `i·n + j`.
    pub fn tensor_over_a(&self, v: &ModuleVec, w: &ModuleVec) -> Result<ModuleVec, BimodError> {
        let (m, n) = (leaf_rank(v.shape())?, leaf_rank(w.shape())?);
        let mut comps = Vec::with_capacity(m * n);
        for a in v.comps() {
            for b in w.comps() {
                comps.push(self.algebra.star(a, b)?);
            }
        }
        ModuleVec::new(Shape::Leaf(m * n), comps)
    }

    /// `None` when `(v·a) ⊗_A w = Σ (φ¹▷v) ⊗_A ((φ²▷a)·(φ³▷w))`.
    pub fn quotient_residual(&self, v: &ModuleVec, a: &PolyFunction, w: &ModuleVec) -> Result<Option<String>, BimodError> {
        let lhs = self.tensor_over_a(&self.right_act_vec(v, a)?, w)?;
        let mut rhs = ModuleVec::zero(lhs.shape().clone(), self.algebra.nvars(), self.algebra.order());
        for (k, c) in self.calc.hopf().phi().terms() {
            let v1 = self.calc.act(&self.mono(&k[0]), v)?.map(|p| p.scale_series(c));
            let a2 = self.algebra.act(&self.mono(&k[1]), a)?;
            let w3 = self.calc.act(&self.mono(&k[2]), w)?;
            rhs = rhs.add(&self.tensor_over_a(&v1, &self.left_act_vec(&a2, &w3)?)?);
        }
        Ok(lhs.sub(&rhs).first_term(&self.names(1)).map(|t| format!("quotient relation: {t}")))
    }

    /// `None` when the unitors agree with the actions: `a ⊗_A v ↦ a·v` and
    /// `v ⊗_A a ↦ v·a` under `A¹ ⊗_A Aᵐ ≅ Aᵐ ≅ Aᵐ ⊗_A A¹`.
    pub fn unitor_residual(&self, a: &PolyFunction, v: &ModuleVec) -> Result<Option<String>, BimodError> {
        let av = ModuleVec::new(Shape::Leaf(1), vec![a.clone()])?;
        let left = self.tensor_over_a(&av, v)?.comps().to_vec();
        let right = self.tensor_over_a(v, &av)?.comps().to_vec();
        let la = self.left_act_vec(a, v)?;
        let ra = self.right_act_vec(v, a)?;
        for (i, ((l, r), (x, y))) in left.iter().zip(&right).zip(la.comps().iter().zip(ra.comps())).enumerate() {
            if let Some(t) = self.first_term(&l.sub(x)) {
                return Ok(Some(format!("left unitor [{i}]: {t}")));
            }
            if let Some(t) = self.first_term(&r.sub(y)) {
                return Ok(Some(format!("right unitor [{i}]: {t}")));
            }
        }
        Ok(None)
    }

    /// The descended braiding `τ^A(v ⊗_A w) = (R²▷w) ⊗_A (R¹▷v)`, computed
    /// from the R-matrix; components at `j·m + i`.
    pub fn braiding_a(&self, v: &ModuleVec, w: &ModuleVec) -> Result<ModuleVec, BimodError> {
        let (m, n) = (leaf_rank(v.shape())?, leaf_rank(w.shape())?);
        let mut comps = Vec::with_capacity(m * n);
        for wj in w.comps() {
            for vi in v.comps() {
                comps.push(self.algebra.pair_apply(&self.braid, wj, vi)?);
            }
        }
        ModuleVec::new(Shape::Leaf(m * n), comps)
    }

    /// `None` when `τ^A` is the plain permutation of `⊗_A` components.
    pub fn braiding_permutation_residual(&self, v: &ModuleVec, w: &ModuleVec) -> Result<Option<String>, BimodError> {
        let (m, n) = (v.comps().len(), w.comps().len());
        let vw = self.tensor_over_a(v, w)?;
        let tau = self.braiding_a(v, w)?;
        for j in 0..n {
            for i in 0..m {
                if let Some(t) = self.first_term(&tau.comps()[j * m + i].sub(&vw.comps()[i * n + j])) {
                    return Ok(Some(format!("τ^A at ({j},{i}): {t}")));
                }
            }
        }
        Ok(None)
    }

    /// `None` when `a·v = (R²▷v)·(R¹▷a)` (symmetric bimodule).
    pub fn symmetric_residual(&self, a: &PolyFunction, v: &ModuleVec) -> Result<Option<String>, BimodError> {
        let lhs = self.left_act_vec(a, v)?;
        for (i, (l, vi)) in lhs.comps().iter().zip(v.comps()).enumerate() {
            let r = self.algebra.pair_apply(&self.braid, vi, a)?;
            if let Some(t) = self.first_term(&l.sub(&r)) {
                return Ok(Some(format!("symmetric law [{i}]: {t}")));
            }
        }
        Ok(None)
    }

    // ---- the bimodule structure of internal homs ----

    /// `l̂(a) = Σ (ψ¹▷a) ⋆ ((ψ²βS(ψ³)) ▷ ·)` on `A^rank`, `ψ = φ⁻¹`.
    pub fn hat_l(&self, a: &PolyFunction, rank: usize) -> Result<HomOperator, BimodError> {
        let z = self.calc.curry_element();
        let mut d = DiffOperator::zero(self.algebra.nvars(), self.algebra.order());
        let mut groups: std::collections::BTreeMap<PbwMonomial, TensorElement> = Default::default();
        for (k, c) in z.terms() {
            groups
                .entry(k[0].clone())
                .or_insert_with(|| TensorElement::zero(z.lie().clone(), 1, z.order()))
                .add_term(vec![k[1].clone()], c.clone());
        }
        for (m, rest) in groups {
            let ma = self.algebra.act(&self.mono(&m), a)?;
            if ma.is_zero() {
                continue;
            }
            let lm = self.algebra.left_multiplication(&ma)?;
            d.add_assign(&lm.compose(&self.calc.rho(&Shape::Leaf(1), &rest)?));
        }
        Ok(HomOperator::diagonal(Shape::Leaf(rank), Shape::Leaf(rank), &d))
    }

    /// `a·L = l̂_W(a) • L`.
    pub fn left_act_hom(&self, a: &PolyFunction, l: &HomOperator) -> Result<HomOperator, BimodError> {
        let hat = self.hat_l(a, leaf_rank(l.target())?)?;
        self.calc.internal_comp(&hat, l)
    }

    /// `L·a = L • l̂_V(a)`.
    pub fn right_act_hom(&self, l: &HomOperator, a: &PolyFunction) -> Result<HomOperator, BimodError> {
        let hat = self.hat_l(a, leaf_rank(l.source())?)?;
        self.calc.internal_comp(l, &hat)
    }

    // ---- descent to ⊗_A ----

    fn twist_factors(&self, a: &Shape, b: &Shape, inverse: bool) -> Result<Option<DiffOperator>, BimodError> {
        match self.algebra.twist() {
            None => Ok(None),
            Some(t) => {
                let e = if inverse { t.f() } else { t.f_inv() };
                Ok(Some(self.calc.rho_factors(&[a, b], e)?))
            }
        }
    }

    /// The projection `V ⊗ W → V ⊗_A W`, `y ↦ (F⁻¹ ▷ y)|_diagonal`.
    pub fn project(&self, y: &ModuleVec) -> Result<ModuleVec, BimodError> {
        let (a, b) = y.shape().factors()?;
        let (a, b) = (a.clone(), b.clone());
        leaf_rank(&a)?;
        leaf_rank(&b)?;
        let y = match self.twist_factors(&a, &b, false)? {
            Some(d) => y.map(|c| d.apply(c)),
            None => y.clone(),
        };
        ModuleVec::new(Shape::Leaf(a.rank() * b.rank()), y.comps().iter().map(|c| c.diagonal(2)).collect())
    }

    /// An operator between two-factor tensor shapes of free modules pushed
    /// down to `⊗_A`: `K ↦ (ρ⊗ρ(F⁻¹) ∘ K ∘ ρ⊗ρ(F))|_diagonal`.
    pub fn collapse(&self, k: &HomOperator) -> Result<HomOperator, BimodError> {
        let (sa, sb) = k.source().factors()?;
        let (ta, tb) = k.target().factors()?;
        for s in [sa, sb, ta, tb] {
            leaf_rank(s)?;
        }
        let k = match (self.twist_factors(sa, sb, true)?, self.twist_factors(ta, tb, false)?) {
            (Some(pre), Some(post)) => k.post_scalar(&pre).pre_scalar(&post),
            _ => k.clone(),
        };
        Ok(k.restrict_to_diagonal())
    }

    /// `L ⊗•^A L′`: the tensor product of internal homs descended to `⊗_A`.
    pub fn tensor_hom_a(&self, l: &HomOperator, lp: &HomOperator) -> Result<HomOperator, BimodError> {
        self.collapse(&self.calc.tensor_hom(l, lp)?)
    }

    /// `None` when `collapse(K)(π y) = π(K y)`.
    pub fn descent_residual(&self, k: &HomOperator, y: &ModuleVec) -> Result<Option<String>, BimodError> {
        let lhs = self.collapse(k)?.apply(&self.project(y)?)?;
        let rhs = self.project(&k.apply(y)?)?;
        Ok(lhs.sub(&rhs).first_term(&self.names(1)).map(|t| format!("descent: {t}")))
    }

    // ---- hom_A membership ----

    /// Checks `ev(L ⊗ (v·a)) = Σ ev((ψ¹▷L) ⊗ (ψ²▷v)) · (ψ³▷a)` with
    /// `ψ = φ⁻¹`, for `v = u·e_j` over basis vectors `e_j` and monomials `u`
    /// of degree at most `degree_bound`, and `a` every coordinate.
    pub fn is_right_a_linear(&self, l: &HomOperator, degree_bound: u32) -> Report {
        let start = Instant::now();
        let residual = self.right_linearity_defect(l, degree_bound).unwrap_or_else(|e| Some(format!("error: {e}")));
        Report::new("is_right_A_linear", ANCHOR_HOM_A, residual, start.elapsed())
    }

    fn right_linearity_defect(&self, l: &HomOperator, degree_bound: u32) -> Result<Option<String>, BimodError> {
        let rank = leaf_rank(l.source())?;
        leaf_rank(l.target())?;
        let (nv, order) = (self.algebra.nvars(), self.algebra.order());
        let coords: Vec<usize> = (0..nv).collect();
        let names = self.names(1);
        let psi = self.calc.hopf().phi_inv();
        let mut memo = EvalMemo::new(&self.calc, l);
        let direct = self.calc.eval_op(l)?;
        for u in monomials_up_to(nv, order, &coords, degree_bound) {
            for j in 0..rank {
                let mut comps = vec![PolyFunction::zero(nv, order); rank];
                comps[j] = u.clone();
                let v = ModuleVec::new(Shape::Leaf(rank), comps)?;
                for (k, a) in coords.iter().map(|&k| (k, self.algebra.coordinate(k))) {
                    let lhs = direct.apply(&self.right_act_vec(&v, &a)?)?;
                    let mut rhs = ModuleVec::zero(l.target().clone(), nv, order);
                    for (key, c) in psi.terms() {
                        let ev = memo.get(&key[0])?;
                        if ev.is_zero() {
                            continue;
                        }
                        let v2 = self.calc.act(&self.mono(&key[1]), &v)?;
                        let a3 = self.algebra.act(&self.mono(&key[2]), &a)?.scale_series(c);
                        rhs = rhs.add(&self.right_act_vec(&ev.apply(&v2)?, &a3)?);
                    }
                    if let Some(t) = lhs.sub(&rhs).first_term(&names) {
                        let u = u.render(&names);
                        return Ok(Some(format!("right A-linearity (Leibniz) defect at v = ({u})·e{j}, a = {}: {t}", names[k])));
                    }
                }
            }
        }
        Ok(None)
    }
}
