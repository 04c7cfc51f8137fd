//! Comparison of internal homs before and after a cochain twist: the
//! isomorphism `γ: hom_F(V,W) → hom(V,W)` and the diagrams relating the
//! twisted evaluation, composition and tensor product to the untwisted ones.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use qtwist_core::{GaussianRational, PbwMonomial, TensorElement};
use qtwist_hopf::{CochainTwist, Preset, QuasiHopfData};
use qtwist_repr::DerivationRep;

use crate::calculus::{EvalMemo, HomCalculus};
use crate::error::BimodError;
use crate::operator::HomOperator;
use crate::shape::{ModuleVec, Shape};

/// Internal-hom calculi over `H` and over `H_F` on the same carrier.
pub struct TwistComparison {
    base: HomCalculus,
    twisted: HomCalculus,
    twist: CochainTwist,
    gamma: OnceLock<TensorElement>,
    gamma_inv: OnceLock<TensorElement>,
    tensor_xi: OnceLock<TensorElement>,
    log: OnceLock<Option<TwistLog>>,
}

/// `Z = log F⁻¹` in the two forms used: with `S` on the second leg (for
/// sandwiching operators) and as is (for the coherence maps).
struct TwistLog {
    sandwich: TensorElement,
    plain: TensorElement,
}

impl std::fmt::Debug for TwistComparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TwistComparison").field("base", &self.base).finish_non_exhaustive()
    }
}

/// `(first leg, remaining one-leg element)` groups of a two-leg element.
fn split_first(x: &TensorElement) -> BTreeMap<PbwMonomial, TensorElement> {
    let mut out: BTreeMap<PbwMonomial, TensorElement> = BTreeMap::new();
    for (k, c) in x.terms() {
        out.entry(k[0].clone())
            .or_insert_with(|| TensorElement::zero(x.lie().clone(), 1, x.order()))
            .add_term(vec![k[1].clone()], c.clone());
    }
    out
}

fn residual(calc: &HomCalculus, label: &str, lhs: &HomOperator, rhs: &HomOperator) -> Option<String> {
    lhs.sub(rhs).first_term(&calc.names(lhs.source().blocks())).map(|t| format!("{label}: {t}"))
}

impl TwistComparison {
    pub fn new(base: QuasiHopfData, twisted: QuasiHopfData, rep: Arc<DerivationRep>, twist: CochainTwist) -> Self {
        Self {
            base: HomCalculus::new(base, rep.clone()),
            twisted: HomCalculus::new(twisted, rep),
            twist,
            gamma: OnceLock::new(),
            gamma_inv: OnceLock::new(),
            tensor_xi: OnceLock::new(),
            log: OnceLock::new(),
        }
    }

    pub fn from_preset(p: &Preset) -> Result<Self, BimodError> {
        let rep = DerivationRep::from_descriptor(&p.rep, p.base.lie().clone(), p.base.order());
        Ok(Self::new(p.base.clone(), p.twisted()?, Arc::new(rep), p.twist.clone()))
    }

    /// The calculus over the untwisted `H`.
    pub fn base(&self) -> &HomCalculus {
        &self.base
    }

    /// The calculus over `H_F`.
    pub fn twisted(&self) -> &HomCalculus {
        &self.twisted
    }

    pub fn twist(&self) -> &CochainTwist {
        &self.twist
    }

    /// `log F⁻¹`, when `F = 1 + O(ℏ)`.
    fn twist_log(&self) -> Option<&TwistLog> {
        self.log
            .get_or_init(|| {
                let plain = self.twist.f_inv().log_truncated().ok()?;
                let sandwich = self.base.hopf().antipode_on_leg(&plain, 1);
                Some(TwistLog { sandwich, plain })
            })
            .as_ref()
    }

    /// `exp(±T)(L)` for the sandwich map `T(L) = Σ ρ(Z₍₁₎) ∘ L ∘ ρ(S(Z₍₂₎))`.
    /// Since `L ↦ ρ(x) ∘ L ∘ ρ(S(y))` is multiplicative in `x⊗y`, this equals
    /// sandwiching with `exp(±Z)`; `T` raises the ℏ-valuation, so the series
    /// stops at the truncation order.
    fn exp_sandwich(&self, z: &TensorElement, l: &HomOperator, sign: i64) -> Result<HomOperator, BimodError> {
        let mut term = l.clone();
        let mut sum = l.clone();
        for k in 1..=self.base.order() {
            term = self.base.chain(z, &[l.target(), l.source()], &[&term])?.scale(&GaussianRational::ratio(sign, k as i64));
            if term.is_zero() {
                break;
            }
            sum.add_assign(&term);
        }
        Ok(sum)
    }

    /// `γ(L) = Σ ρ(F⁻¹₍₁₎) ∘ L ∘ ρ(S(F⁻¹₍₂₎))`.
    pub fn gamma(&self, l: &HomOperator) -> Result<HomOperator, BimodError> {
        if let Some(log) = self.twist_log() {
            return self.exp_sandwich(&log.sandwich, l, 1);
        }
        let e = self.gamma.get_or_init(|| self.base.hopf().antipode_on_leg(self.twist.f_inv(), 1));
        self.base.chain(e, &[l.target(), l.source()], &[l])
    }

    /// `γ⁻¹(L) = Σ ρ(F₍₁₎) ∘ L ∘ ρ(S(F₍₂₎))`.
    pub fn gamma_inv(&self, l: &HomOperator) -> Result<HomOperator, BimodError> {
        if let Some(log) = self.twist_log() {
            return self.exp_sandwich(&log.sandwich, l, -1);
        }
        let e = self.gamma_inv.get_or_init(|| self.base.hopf().antipode_on_leg(self.twist.f(), 1));
        self.base.chain(e, &[l.target(), l.source()], &[l])
    }

    /// The coherence map `V ⊗_F W → V ⊗ W`, `v⊗w ↦ F⁻¹ ▷ (v⊗w)`, or its
    /// inverse, as a diagonal operator on the tensor shape.
    pub fn coherence(&self, a: &Shape, b: &Shape, inverse: bool) -> Result<HomOperator, BimodError> {
        let elem = if inverse { self.twist.f() } else { self.twist.f_inv() };
        let shape = Shape::tensor(a, b);
        Ok(HomOperator::diagonal(shape.clone(), shape, &self.base.rho_factors(&[a, b], elem)?))
    }

    /// `ρ⊗ρ(F⁻¹) ∘ K ∘ ρ⊗ρ(F)`: a twisted operator between tensor shapes
    /// transported to the untwisted tensor products.
    pub fn transport(&self, k: &HomOperator) -> Result<HomOperator, BimodError> {
        let (sa, sb) = k.source().factors()?;
        let (ta, tb) = k.target().factors()?;
        let Some(log) = self.twist_log() else {
            let pre = self.coherence(sa, sb, true)?;
            let post = self.coherence(ta, tb, false)?;
            return post.compose(&k.compose(&pre)?);
        };
        // ρ⊗ρ(F^{∓1}) = exp(∓D) with D = ρ⊗ρ(log F⁻¹).
        let d_source = self.base.rho_factors(&[sa, sb], &log.plain)?;
        let d_target = self.base.rho_factors(&[ta, tb], &log.plain)?;
        let order = self.base.order();
        let mut term = k.clone();
        let mut right = k.clone();
        for j in 1..=order {
            term = term.post_scalar(&d_source).scale(&GaussianRational::ratio(-1, j as i64));
            if term.is_zero() {
                break;
            }
            right.add_assign(&term);
        }
        let mut term = right.clone();
        let mut out = right;
        for j in 1..=order {
            term = term.pre_scalar(&d_target).scale(&GaussianRational::ratio(1, j as i64));
            if term.is_zero() {
                break;
            }
            out.add_assign(&term);
        }
        Ok(out)
    }

    /// `None` when `γ⁻¹(γ(L)) = L`.
    pub fn check_roundtrip(&self, l: &HomOperator) -> Result<Option<String>, BimodError> {
        let back = self.gamma_inv(&self.gamma(l)?)?;
        Ok(residual(&self.base, "γ⁻¹∘γ", &back, l))
    }

    /// `None` when `γ(h ▷_F L) = h ▷ γ(L)`.
    pub fn check_naturality(&self, h: &TensorElement, l: &HomOperator) -> Result<Option<String>, BimodError> {
        let lhs = self.gamma(&self.twisted.adjoint_act(h, l)?)?;
        let rhs = self.base.adjoint_act(h, &self.gamma(l)?)?;
        Ok(residual(&self.base, "γ intertwines the adjoint actions", &lhs, &rhs))
    }

    /// `None` when `ev_F(L ⊗ v) = Σ ev((F⁻¹₍₁₎ ▷ γL) ⊗ F⁻¹₍₂₎ ▷ v)`.
    pub fn check_ev(&self, l: &HomOperator, v: &ModuleVec) -> Result<Option<String>, BimodError> {
        let lhs = self.twisted.internal_ev(l, v)?;
        let g = self.gamma(l)?;
        let mut memo = EvalMemo::new(&self.base, &g);
        let mut rhs = ModuleVec::zero(l.target().clone(), self.base.nvars(v.shape()), self.base.order());
        for (m1, rest) in split_first(self.twist.f_inv()) {
            let d = self.base.rho(v.shape(), &rest)?;
            rhs = rhs.add(&memo.get(&m1)?.apply(&v.map(|c| d.apply(c)))?);
        }
        let diff = lhs.sub(&rhs);
        Ok(diff.first_term(&self.base.names(v.shape().blocks())).map(|t| format!("ev-comparison: {t}")))
    }

    /// `None` when `γ(L •_F L′) = Σ (F⁻¹₍₁₎ ▷ γL) • (F⁻¹₍₂₎ ▷ γL′)`.
    pub fn check_comp(&self, l: &HomOperator, lp: &HomOperator) -> Result<Option<String>, BimodError> {
        let lhs = self.gamma(&self.twisted.internal_comp(l, lp)?)?;
        let (g, gp) = (self.gamma(l)?, self.gamma(lp)?);
        let mut ml = EvalMemo::new(&self.base, &g);
        let mut mlp = EvalMemo::new(&self.base, &gp);
        let mut rhs = HomOperator::zero(lp.source().clone(), l.target().clone(), lhs.nvars(), lhs.order());
        for (m1, rest) in split_first(self.twist.f_inv()) {
            let right = mlp.adjoint_element(&rest)?;
            if right.is_zero() {
                continue;
            }
            rhs.add_assign(&self.base.internal_comp(&ml.adjoint(&m1)?, &right)?);
        }
        Ok(residual(&self.base, "composition comparison", &lhs, &rhs))
    }

    /// `Σ (F⁻¹₍₁₎ ▷ γL) ⊗• (F⁻¹₍₂₎ ▷ γL′)`, in one pass through the element
    /// `Ξ·F⁻¹₁₂`.
    fn twisted_pair_tensor(&self, l: &HomOperator, lp: &HomOperator) -> Result<HomOperator, BimodError> {
        let xi = match self.tensor_xi.get() {
            Some(x) => x,
            None => {
                let x = self.base.xi_element()?.mul(&self.twist.f_inv().embed(&[1, 2], 4));
                self.tensor_xi.get_or_init(|| x)
            }
        };
        self.base.tensor_hom_with(xi, &self.gamma(l)?, &self.gamma(lp)?)
    }

    /// `None` when `γ(ρ⊗ρ(F⁻¹) ∘ (L ⊗•_F L′) ∘ ρ⊗ρ(F)) = Σ (F⁻¹₍₁₎ ▷ γL) ⊗• (F⁻¹₍₂₎ ▷ γL′)`.
    pub fn check_tensor(&self, l: &HomOperator, lp: &HomOperator) -> Result<Option<String>, BimodError> {
        let lhs = self.gamma(&self.transport(&self.twisted.tensor_hom(l, lp)?)?)?;
        let rhs = self.twisted_pair_tensor(l, lp)?;
        Ok(residual(&self.base, "tensor comparison", &lhs, &rhs))
    }

    /// The bimodule-level version of [`Self::check_tensor`]: both sides
    /// collapsed to the diagonal, where the untwisted algebra is
    /// commutative and the collapse needs no coherence map.
    pub fn check_tensor_collapsed(&self, l: &HomOperator, lp: &HomOperator) -> Result<Option<String>, BimodError> {
        let collapsed = self.transport(&self.twisted.tensor_hom(l, lp)?)?.restrict_to_diagonal();
        let lhs = self.gamma(&collapsed)?;
        let rhs = self.twisted_pair_tensor(l, lp)?.restrict_to_diagonal();
        Ok(residual(&self.base, "collapsed tensor comparison", &lhs, &rhs))
    }
}
