//! The closed structure of the category of modules over a quasi-Hopf
//! algebra, realized on free modules over a polynomial carrier: adjoint
//! action, evaluation, composition, invariant homs, braiding and the tensor
//! product of internal homs.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use qtwist_core::{HbarPoly, LegKey, PbwMonomial, Slot, TensorElement};
use qtwist_hopf::QuasiHopfData;
use qtwist_repr::{AlgebraObject, DerivationRep, DiffOperator, PolyFunction};

use crate::error::BimodError;
use crate::operator::HomOperator;
use crate::shape::{ModuleVec, Shape};

/// Coordinate names for `blocks` copies of the carrier: the first block keeps
/// the carrier names, later blocks get one prime per block.
pub fn block_names(coords: &[String], blocks: usize) -> Vec<String> {
    (0..blocks)
        .flat_map(|b| coords.iter().map(move |c| format!("{c}{}", "'".repeat(b))))
        .collect()
}

/// Elements of `H^{⊗k}` that the closed-structure formulas are built from.
#[derive(Default)]
struct Elements {
    eval: OnceLock<TensorElement>,
    theta_inv: OnceLock<TensorElement>,
    comp: OnceLock<TensorElement>,
    curry: OnceLock<TensorElement>,
    omega: OnceLock<TensorElement>,
    xi: OnceLock<TensorElement>,
}

/// Internal-hom calculus over `hopf` acting on the carrier of `rep`.
pub struct HomCalculus {
    hopf: QuasiHopfData,
    rep: Arc<DerivationRep>,
    rho_cache: Mutex<HashMap<(Shape, PbwMonomial), Arc<DiffOperator>>>,
    elems: Elements,
}

impl std::fmt::Debug for HomCalculus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HomCalculus").field("coordinates", &self.rep.coordinates()).finish_non_exhaustive()
    }
}

/// Groups the terms of an element by their first leg.
fn group_first(terms: &[(LegKey, HbarPoly)]) -> BTreeMap<PbwMonomial, Vec<(LegKey, HbarPoly)>> {
    let mut groups: BTreeMap<PbwMonomial, Vec<(LegKey, HbarPoly)>> = BTreeMap::new();
    for (k, c) in terms {
        groups.entry(k[0].clone()).or_default().push((k[1..].to_vec(), c.clone()));
    }
    groups
}

fn one_leg(lie: &TensorElement, terms: &[(LegKey, HbarPoly)]) -> TensorElement {
    let mut out = TensorElement::zero(lie.lie().clone(), 1, lie.order());
    for (k, c) in terms {
        out.add_term(k.clone(), c.clone());
    }
    out
}

/// The largest ℏ-valuation an element term may have to contribute against
/// operators of the given valuations; `None` when some operator is zero.
fn ops_budget(order: usize, vals: impl IntoIterator<Item = Option<usize>>) -> Option<usize> {
    let mut total = 0;
    for v in vals {
        total += v?;
    }
    order.checked_sub(total)
}

/// Swaps the two coordinate blocks of a polynomial in `d1 + d2` variables.
fn swap_blocks(p: &PolyFunction, d1: usize) -> PolyFunction {
    let mut out = PolyFunction::zero(p.nvars(), p.order());
    for (e, c) in p.terms() {
        let mut ne = e[d1..].to_vec();
        ne.extend_from_slice(&e[..d1]);
        out.add_term(ne, c.clone());
    }
    out
}

impl HomCalculus {
    pub fn new(hopf: QuasiHopfData, rep: Arc<DerivationRep>) -> Self {
        Self { hopf, rep, rho_cache: Mutex::new(HashMap::new()), elems: Elements::default() }
    }

    /// The calculus over the Hopf algebra acting on an algebra object.
    pub fn for_algebra(a: &AlgebraObject) -> Self {
        Self::new(a.hopf().clone(), a.rep().clone())
    }

    pub fn hopf(&self) -> &QuasiHopfData {
        &self.hopf
    }

    pub fn rep(&self) -> &Arc<DerivationRep> {
        &self.rep
    }

    /// Coordinates per block.
    pub fn block_dim(&self) -> usize {
        self.rep.nvars()
    }

    pub fn order(&self) -> usize {
        self.hopf.order()
    }

    pub fn names(&self, blocks: usize) -> Vec<String> {
        block_names(self.rep.coordinates(), blocks)
    }

    pub fn nvars(&self, shape: &Shape) -> usize {
        shape.blocks() * self.block_dim()
    }

    // ---- the Hopf action on module shapes ----

    /// `ρ_shape(m)` for a PBW monomial; tensor shapes act through `Δ`.
    pub fn rho_monomial(&self, shape: &Shape, m: &PbwMonomial) -> Result<Arc<DiffOperator>, BimodError> {
        let key = (shape.skeleton(), m.clone());
        if let Some(op) = self.rho_cache.lock().unwrap().get(&key) {
            return Ok(op.clone());
        }
        let op = match shape {
            Shape::Leaf(_) => self.rep.rho_monomial(m)?,
            Shape::Tensor(a, b) => {
                let mut acc = DiffOperator::zero(self.nvars(shape), self.order());
                for (k, c) in self.hopf.delta_monomial(m).terms() {
                    let l = self.rho_monomial(a, &k[0])?;
                    let r = self.rho_monomial(b, &k[1])?;
                    acc.add_assign(&l.tensor(&r).scale_series(c));
                }
                Arc::new(acc)
            }
        };
        self.rho_cache.lock().unwrap().insert(key, op.clone());
        Ok(op)
    }

    /// `ρ_shape(h)` for a one-leg element.
    pub fn rho(&self, shape: &Shape, h: &TensorElement) -> Result<DiffOperator, BimodError> {
        if h.legs() != 1 {
            return Err(BimodError::Shape(format!("expected a one-leg element, got {} legs", h.legs())));
        }
        let mut out = DiffOperator::zero(self.nvars(shape), self.order());
        for (k, c) in h.terms() {
            out.add_assign(&self.rho_monomial(shape, &k[0])?.scale_series(c));
        }
        Ok(out)
    }

    /// `ρ_{s₁}⊗⋯⊗ρ_{s_k}(X)` for a `k`-leg element on consecutive blocks.
    pub fn rho_factors(&self, shapes: &[&Shape], x: &TensorElement) -> Result<DiffOperator, BimodError> {
        if x.legs() != shapes.len() {
            return Err(BimodError::Shape(format!("{} legs for {} factors", x.legs(), shapes.len())));
        }
        let nvars: usize = shapes.iter().map(|s| self.nvars(s)).sum();
        let mut out = DiffOperator::zero(nvars, self.order());
        for (k, c) in x.terms() {
            let mut op = DiffOperator::identity(0, self.order());
            for (m, s) in k.iter().zip(shapes) {
                op = op.tensor(&*self.rho_monomial(s, m)?);
            }
            out.add_assign(&op.scale_series(c));
        }
        Ok(out)
    }

    /// `h ▷ v`.
    pub fn act(&self, h: &TensorElement, v: &ModuleVec) -> Result<ModuleVec, BimodError> {
        let d = self.rho(v.shape(), h)?;
        Ok(v.map(|c| d.apply(c)))
    }

    /// `1_end(V) = (β ▷ ·)`.
    pub fn unit_end(&self, shape: &Shape) -> Result<HomOperator, BimodError> {
        Ok(HomOperator::diagonal(shape.clone(), shape.clone(), &self.rho(shape, self.hopf.beta())?))
    }

    /// The plain identity map of a shape.
    pub fn identity(&self, shape: &Shape) -> HomOperator {
        HomOperator::diagonal(shape.clone(), shape.clone(), &DiffOperator::identity(self.nvars(shape), self.order()))
    }

    /// `Σ ρ(E₁) ∘ L₁ ∘ ρ(E₂) ∘ L₂ ∘ ⋯ ∘ L_{k−1} ∘ ρ(E_k)` for a `k`-leg
    /// element `E`; `shapes[i]` is the shape acted on by leg `i`.
    pub fn chain(&self, e: &TensorElement, shapes: &[&Shape], ops: &[&HomOperator]) -> Result<HomOperator, BimodError> {
        if e.legs() != ops.len() + 1 || shapes.len() != e.legs() || ops.is_empty() {
            return Err(BimodError::Shape("chain needs k legs, k shapes and k−1 operators".into()));
        }
        // Terms whose ℏ-valuation exceeds the truncation order together with
        // the operators' valuations cannot contribute.
        let budget = ops_budget(self.order(), ops.iter().map(|o| o.valuation()));
        let terms: Vec<(LegKey, HbarPoly)> = e
            .terms()
            .iter()
            .filter(|(_, c)| budget.is_some_and(|b| c.valuation().is_some_and(|v| v <= b)))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        match self.chain_rec(e, &terms, shapes, ops)? {
            ChainValue::Matrix(m) => Ok(m),
            ChainValue::Scalar(_) => unreachable!("at least one operator"),
        }
    }

    fn chain_rec(
        &self,
        proto: &TensorElement,
        terms: &[(LegKey, HbarPoly)],
        shapes: &[&Shape],
        ops: &[&HomOperator],
    ) -> Result<ChainValue, BimodError> {
        if ops.is_empty() {
            return Ok(ChainValue::Scalar(self.rho(shapes[0], &one_leg(proto, terms))?));
        }
        let mut acc: Option<HomOperator> = None;
        for (m, rest) in group_first(terms) {
            let inner = match self.chain_rec(proto, &rest, &shapes[1..], &ops[1..])? {
                ChainValue::Scalar(d) => ops[0].post_scalar(&d),
                ChainValue::Matrix(mat) => ops[0].compose(&mat)?,
            };
            let term = if m.is_unit() { inner } else { inner.pre_scalar(&*self.rho_monomial(shapes[0], &m)?) };
            match &mut acc {
                None => acc = Some(term),
                Some(a) => a.add_assign(&term),
            }
        }
        let out = match acc {
            Some(a) => a,
            None => {
                let tail = ops.last().unwrap();
                HomOperator::zero(tail.source().clone(), ops[0].target().clone(), self.nvars(shapes[0]), self.order())
            }
        };
        Ok(ChainValue::Matrix(out))
    }

    // ---- elements ----

    fn contract(&self, x: &TensorElement, groups: &[Vec<Slot<'_>>]) -> TensorElement {
        x.contract(groups)
    }

    /// `Σ φ¹₍₁₎ ⊗ S(φ¹₍₂₎) S(φ²) α φ³`: `ev(L⊗v) = Σ ρ(E₁) L ρ(E₂) v`.
    fn eval_element(&self) -> &TensorElement {
        self.elems.eval.get_or_init(|| {
            let h = &self.hopf;
            let p = h.coproduct_on_leg(h.phi(), 0);
            let p = h.antipode_on_leg(&h.antipode_on_leg(&p, 1), 2);
            self.contract(&p, &[vec![Slot::Leg(0)], vec![Slot::Leg(1), Slot::Leg(2), Slot::Elem(h.alpha()), Slot::Leg(3)]])
        })
    }

    /// `Σ φ¹ ⊗ S(φ²) α φ³`.
    fn theta_inv_element(&self) -> &TensorElement {
        self.elems.theta_inv.get_or_init(|| {
            let h = &self.hopf;
            let p = h.antipode_on_leg(h.phi(), 1);
            self.contract(&p, &[vec![Slot::Leg(0)], vec![Slot::Leg(1), Slot::Elem(h.alpha()), Slot::Leg(2)]])
        })
    }

    /// `Σ ψ¹ ⊗ ψ² β S(ψ³)` with `ψ = φ⁻¹`, the currying element.
    pub fn curry_element(&self) -> &TensorElement {
        self.elems.curry.get_or_init(|| {
            let h = &self.hopf;
            let p = h.antipode_on_leg(h.phi_inv(), 2);
            self.contract(&p, &[vec![Slot::Leg(0)], vec![Slot::Leg(1), Slot::Elem(h.beta()), Slot::Leg(2)]])
        })
    }

    /// The three-leg element with `L • L′ = Σ ρ(C₁) L ρ(C₂) L′ ρ(C₃)`:
    /// `C = Σ Y₁ψ¹₍₁₎ ⊗ S(ψ¹₍₂₎) Y₂ ψ² ⊗ S(ψ³)` with `Y` the evaluation element.
    fn comp_element(&self) -> &TensorElement {
        self.elems.comp.get_or_init(|| {
            let h = &self.hopf;
            let p = h.coproduct_on_leg(h.phi_inv(), 0);
            let p = h.antipode_on_leg(&h.antipode_on_leg(&p, 1), 3);
            let t = self.eval_element().tensor(&p);
            self.contract(
                &t,
                &[vec![Slot::Leg(0), Slot::Leg(2)], vec![Slot::Leg(3), Slot::Leg(1), Slot::Leg(4)], vec![Slot::Leg(5)]],
            )
        })
    }

    /// The element of `H^{⊗4}` (legs `L, L′, v, x`) through which the
    /// associators and the braiding of the middle factors act in the
    /// definition of `⊗•`: `ev((L⊗•L′)⊗(v⊗x)) = Σ ev(Ω₁▷L ⊗ Ω₃▷v) ⊗ ev(Ω₂▷L′ ⊗ Ω₄▷x)`.
    pub fn omega_element(&self) -> Result<&TensorElement, BimodError> {
        if let Some(o) = self.elems.omega.get() {
            return Ok(o);
        }
        let h = &self.hopf;
        let (r, _) = h.require_r()?;
        let step1 = h.coproduct_on_leg(h.phi(), 2);
        let step2 = h.phi_inv().embed(&[2, 3, 4], 4);
        let step3 = r.embed(&[2, 3], 4);
        let step4 = h.phi().embed(&[3, 2, 4], 4);
        let step5 = h.coproduct_on_leg(h.phi_inv(), 2).embed(&[1, 3, 2, 4], 4);
        let omega = step5.mul(&step4).mul(&step3).mul(&step2).mul(&step1);
        Ok(self.elems.omega.get_or_init(|| omega))
    }

    /// `Ξ = Ω · (Δ⊗Δ)(Σ ψ¹ ⊗ ψ²βS(ψ³))`, giving the closed formula
    /// `L⊗•L′ = Σ (ev(Ξ₁▷L ⊗ ·) ⊗ ev(Ξ₂▷L′ ⊗ ·)) ∘ ρ(Ξ₃)⊗ρ(Ξ₄)`.
    pub fn xi_element(&self) -> Result<&TensorElement, BimodError> {
        if let Some(x) = self.elems.xi.get() {
            return Ok(x);
        }
        let h = &self.hopf;
        let psi = h.coproduct_on_leg(&h.coproduct_on_leg(self.curry_element(), 1), 0);
        let xi = self.omega_element()?.mul(&psi);
        Ok(self.elems.xi.get_or_init(|| xi))
    }

    // ---- adjoint action, evaluation, composition ----

    /// `h ▷ L = Σ ρ_W(h₍₁₎) ∘ L ∘ ρ_V(S(h₍₂₎))`.
    pub fn adjoint_act(&self, h: &TensorElement, l: &HomOperator) -> Result<HomOperator, BimodError> {
        let x = self.hopf.antipode_on_leg(&self.hopf.coproduct(h), 1);
        self.chain(&x, &[l.target(), l.source()], &[l])
    }

    /// The operator `v ↦ ev(L ⊗ v) = Σ (φ¹▷L)(S(φ²)αφ³ ▷ v)`.
    pub fn eval_op(&self, l: &HomOperator) -> Result<HomOperator, BimodError> {
        self.chain(self.eval_element(), &[l.target(), l.source()], &[l])
    }

    /// `ev(L ⊗ v)`.
    pub fn internal_ev(&self, l: &HomOperator, v: &ModuleVec) -> Result<ModuleVec, BimodError> {
        self.eval_op(l)?.apply(v)
    }

    /// `L • L′` for `L ∈ hom(W,X)` and `L′ ∈ hom(V,W)`.
    pub fn internal_comp(&self, l: &HomOperator, lp: &HomOperator) -> Result<HomOperator, BimodError> {
        if l.source() != lp.target() {
            return Err(BimodError::Rank(format!("cannot compose {} after {}", l.source(), lp.target())));
        }
        self.chain(self.comp_element(), &[l.target(), l.source(), lp.source()], &[l, lp])
    }

    // ---- invariant homs ----

    /// `None` when `ρ_W(g) ∘ f = f ∘ ρ_V(g)` for every generator `g`,
    /// otherwise a residual.
    pub fn equivariance_residual(&self, f: &HomOperator) -> Result<Option<String>, BimodError> {
        for g in 0..self.hopf.lie().len() as u16 {
            let x = self.hopf.generator(g);
            let lhs = f.pre_scalar(&self.rho(f.target(), &x)?);
            let rhs = f.post_scalar(&self.rho(f.source(), &x)?);
            if let Some(t) = lhs.sub(&rhs).first_term(&self.names(f.source().blocks())) {
                return Ok(Some(format!("{}: {t}", self.hopf.lie().name(g))));
            }
        }
        Ok(None)
    }

    /// `None` when `g ▷ L = ε(g) L` for every generator `g`.
    pub fn invariance_residual(&self, l: &HomOperator) -> Result<Option<String>, BimodError> {
        for g in 0..self.hopf.lie().len() as u16 {
            let x = self.hopf.generator(g);
            let lhs = self.adjoint_act(&x, l)?;
            let rhs = l.scale_series(&self.hopf.counit(&x));
            if let Some(t) = lhs.sub(&rhs).first_term(&self.names(l.source().blocks())) {
                return Ok(Some(format!("{}: {t}", self.hopf.lie().name(g))));
            }
        }
        Ok(None)
    }

    /// `ϑ(f) = (β ▷ ·) ∘ f` for an equivariant `f`.
    pub fn theta(&self, f: &HomOperator) -> Result<HomOperator, BimodError> {
        if let Some(r) = self.equivariance_residual(f)? {
            return Err(BimodError::Precondition(format!("map is not equivariant ({r})")));
        }
        Ok(f.pre_scalar(&self.rho(f.target(), self.hopf.beta())?))
    }

    /// `ϑ⁻¹(L) = Σ (φ¹ ▷ ·) ∘ L ∘ (S(φ²)αφ³ ▷ ·)` for an invariant `L`.
    pub fn theta_inv(&self, l: &HomOperator) -> Result<HomOperator, BimodError> {
        if let Some(r) = self.invariance_residual(l)? {
            return Err(BimodError::Precondition(format!("internal hom is not invariant ({r})")));
        }
        self.chain(self.theta_inv_element(), &[l.target(), l.source()], &[l])
    }

    // ---- associators and braiding ----

    /// `Φ_{U,W,Y}: (U⊗W)⊗Y → U⊗(W⊗Y)`, or its inverse.
    pub fn associator(&self, u: &Shape, w: &Shape, y: &Shape, inverse: bool) -> Result<HomOperator, BimodError> {
        let left = Shape::tensor(&Shape::tensor(u, w), y);
        let right = Shape::tensor(u, &Shape::tensor(w, y));
        let (elem, source, target) =
            if inverse { (self.hopf.phi_inv(), right, left) } else { (self.hopf.phi(), left, right) };
        Ok(HomOperator::diagonal(source, target, &self.rho_factors(&[u, w, y], elem)?))
    }

    /// `τ(v ⊗ w) = (R² ▷ w) ⊗ (R¹ ▷ v)` on a vector of a tensor shape.
    pub fn braiding_tau(&self, vw: &ModuleVec) -> Result<ModuleVec, BimodError> {
        let (r, _) = self.hopf.require_r()?;
        let (a, b) = vw.shape().factors()?;
        let d = self.rho_factors(&[a, b], r)?;
        let acted = vw.map(|c| d.apply(c));
        let d1 = self.nvars(a);
        let (ra, rb) = (a.rank(), b.rank());
        let mut comps = Vec::with_capacity(ra * rb);
        for j in 0..rb {
            for i in 0..ra {
                comps.push(swap_blocks(&acted.comps()[i * rb + j], d1));
            }
        }
        ModuleVec::new(Shape::tensor(b, a), comps)
    }

    // ---- tensor product of internal homs ----

    /// `L ⊗• L′ ∈ hom(V⊗X, W⊗Y)` for `L ∈ hom(V,W)`, `L′ ∈ hom(X,Y)`.
    pub fn tensor_hom(&self, l: &HomOperator, lp: &HomOperator) -> Result<HomOperator, BimodError> {
        self.tensor_hom_with(self.xi_element()?, l, lp)
    }

    /// `Σ (ev(X₁▷L ⊗ ·) ∘ ρ(X₃)) ⊗ (ev(X₂▷L′ ⊗ ·) ∘ ρ(X₄))` for a four-leg
    /// element `X`; with `X = Ξ·(h⊗k⊗1⊗1)` this is `(h▷L) ⊗• (k▷L′)`.
    pub fn tensor_hom_with(&self, xi: &TensorElement, l: &HomOperator, lp: &HomOperator) -> Result<HomOperator, BimodError> {
        if xi.legs() != 4 {
            return Err(BimodError::Shape(format!("expected a four-leg element, got {} legs", xi.legs())));
        }
        let mut el = EvalMemo::new(self, l);
        let mut elp = EvalMemo::new(self, lp);
        // Group by the (L, v) legs; the inner sum over the (L′, x) legs is a
        // single operator per group.
        let mut groups: BTreeMap<(PbwMonomial, PbwMonomial), BTreeMap<PbwMonomial, TensorElement>> = BTreeMap::new();
        let budget = ops_budget(self.order(), [l.valuation(), lp.valuation()]);
        for (k, c) in xi.terms() {
            if !budget.is_some_and(|b| c.valuation().is_some_and(|v| v <= b)) {
                continue;
            }
            let inner = groups.entry((k[0].clone(), k[2].clone())).or_default();
            let e = inner
                .entry(k[1].clone())
                .or_insert_with(|| TensorElement::zero(xi.lie().clone(), 1, xi.order()));
            e.add_term(vec![k[3].clone()], c.clone());
        }
        let source = Shape::tensor(l.source(), lp.source());
        let target = Shape::tensor(l.target(), lp.target());
        let mut out = HomOperator::zero(source, target, self.nvars(l.source()) + self.nvars(lp.source()), self.order());
        for ((m1, m3), inner) in groups {
            let mut right: Option<HomOperator> = None;
            for (m2, x4) in inner {
                let t = elp.get(&m2)?.post_scalar(&self.rho(lp.source(), &x4)?);
                match &mut right {
                    None => right = Some(t),
                    Some(r) => r.add_assign(&t),
                }
            }
            let right = right.expect("nonempty group");
            if right.is_zero() {
                continue;
            }
            let left = el.get(&m1)?;
            let left = if m3.is_unit() { left } else { left.post_scalar(&*self.rho_monomial(l.source(), &m3)?) };
            out.add_assign(&left.tensor(&right));
        }
        Ok(out)
    }

    /// The defining composite of `⊗•` evaluated directly:
    /// `Σ ev(Ω₁▷L ⊗ Ω₃▷v) ⊗ ev(Ω₂▷L′ ⊗ Ω₄▷x)`.
    pub fn tensor_hom_contract(
        &self,
        l: &HomOperator,
        lp: &HomOperator,
        v: &ModuleVec,
        x: &ModuleVec,
    ) -> Result<ModuleVec, BimodError> {
        let omega = self.omega_element()?;
        let mut el = EvalMemo::new(self, l);
        let mut elp = EvalMemo::new(self, lp);
        let mut groups: BTreeMap<(PbwMonomial, PbwMonomial), Vec<(PbwMonomial, PbwMonomial, HbarPoly)>> = BTreeMap::new();
        let vecval = |v: &ModuleVec| v.comps().iter().filter_map(PolyFunction::valuation).min();
        let budget = ops_budget(self.order(), [l.valuation(), lp.valuation(), vecval(v), vecval(x)]);
        for (k, c) in omega.terms() {
            if !budget.is_some_and(|b| c.valuation().is_some_and(|v| v <= b)) {
                continue;
            }
            groups.entry((k[0].clone(), k[2].clone())).or_default().push((k[1].clone(), k[3].clone(), c.clone()));
        }
        let nv = self.nvars(v.shape()) + self.nvars(x.shape());
        let mut out = ModuleVec::zero(Shape::tensor(l.target(), lp.target()), nv, self.order());
        for ((m1, m3), rest) in groups {
            let vv = ModuleVec::new(v.shape().clone(), {
                let d = self.rho_monomial(v.shape(), &m3)?;
                v.comps().iter().map(|c| d.apply(c)).collect()
            })?;
            let left = el.get(&m1)?.apply(&vv)?;
            let mut right = ModuleVec::zero(lp.target().clone(), self.nvars(x.shape()), self.order());
            for (m2, m4, c) in rest {
                let d = self.rho_monomial(x.shape(), &m4)?;
                let xx = x.map(|p| d.apply(p).scale_series(&c));
                right = right.add(&elp.get(&m2)?.apply(&xx)?);
            }
            out = out.add(&left.tensor(&right));
        }
        Ok(out)
    }
}

enum ChainValue {
    Scalar(DiffOperator),
    Matrix(HomOperator),
}

/// Memoizes `m ↦ m ▷ L` and `m ↦ ev((m ▷ L) ⊗ ·)` for one fixed `L`.
/// Since the adjoint action is an algebra action, `(g·m) ▷ L = g ▷ (m ▷ L)`
/// is computed one generator at a time.
pub(crate) struct EvalMemo<'a> {
    calc: &'a HomCalculus,
    l: &'a HomOperator,
    adj: HashMap<PbwMonomial, HomOperator>,
    ev: HashMap<PbwMonomial, HomOperator>,
}

impl<'a> EvalMemo<'a> {
    pub(crate) fn new(calc: &'a HomCalculus, l: &'a HomOperator) -> Self {
        Self { calc, l, adj: HashMap::new(), ev: HashMap::new() }
    }

    /// `m ▷ L`.
    pub(crate) fn adjoint(&mut self, m: &PbwMonomial) -> Result<HomOperator, BimodError> {
        if let Some(v) = self.adj.get(m) {
            return Ok(v.clone());
        }
        let v = match m.factors().split_first() {
            None => self.l.clone(),
            Some((&g, rest)) => {
                let inner = self.adjoint(&PbwMonomial::from_sorted(rest.to_vec()))?;
                if inner.is_zero() {
                    inner
                } else {
                    self.calc.adjoint_act(&self.calc.hopf.generator(g), &inner)?
                }
            }
        };
        self.adj.insert(m.clone(), v.clone());
        Ok(v)
    }

    /// `Σ c (m ▷ L)` for a one-leg element.
    pub(crate) fn adjoint_element(&mut self, h: &TensorElement) -> Result<HomOperator, BimodError> {
        let mut out = HomOperator::zero(self.l.source().clone(), self.l.target().clone(), self.l.nvars(), self.l.order());
        for (k, c) in h.terms() {
            out.add_assign(&self.adjoint(&k[0])?.scale_series(c));
        }
        Ok(out)
    }

    /// `ev((m ▷ L) ⊗ ·)`.
    pub(crate) fn get(&mut self, m: &PbwMonomial) -> Result<HomOperator, BimodError> {
        if let Some(v) = self.ev.get(m) {
            return Ok(v.clone());
        }
        let a = self.adjoint(m)?;
        let v = if a.is_zero() { a } else { self.calc.eval_op(&a)? };
        self.ev.insert(m.clone(), v.clone());
        Ok(v)
    }
}
