//! Seeded property suites for the internal-hom calculus of one preset.
//!
//! Every identity runs in two configurations: "A¹", where all modules are
//! `A¹`, and "A²", where the modules alternate between `A¹` and `A²` so
//! that every sampled hom has an `A²` side while composites on tensor
//! shapes stay small.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use qtwist_core::{HbarPoly, PbwMonomial, TensorElement};
use qtwist_hopf::{preset, PresetName, PresetParams, Report};
use qtwist_repr::AlgebraObject;

use crate::bimodule::BimoduleCalculus;
use crate::calculus::{EvalMemo, HomCalculus};
use crate::error::BimodError;
use crate::operator::HomOperator;
use crate::sampling::{OperatorSampler, SampleProfile};
use crate::shape::{ModuleVec, Shape};
use crate::twisting::TwistComparison;

pub const ANCHOR_EV_COMP: &str = "ev-comp-compatibility";
pub const ANCHOR_THETA_INVARIANT: &str = "theta-invariance";
pub const ANCHOR_THETA_ROUNDTRIP: &str = "theta-roundtrip";
pub const ANCHOR_THETA_EV: &str = "theta-evaluation";
pub const ANCHOR_THETA_COMP: &str = "theta-composition";
pub const ANCHOR_THETA_TENSOR: &str = "theta-tensor";
pub const ANCHOR_COMP_WEAK_ASSOC: &str = "comp-weak-associativity";
pub const ANCHOR_HAT_L_MULT: &str = "hat-l-multiplicativity";
pub const ANCHOR_HAT_L_UNIT: &str = "hat-l-unitality";
pub const ANCHOR_HAT_L_EV: &str = "hat-l-evaluation";
pub const ANCHOR_HOM_UNIT: &str = "hom-bimodule-unit";
pub const ANCHOR_TENSOR_CONTRACT: &str = "tensor-hom-contract";
pub const ANCHOR_TENSOR_UNIT: &str = "tensor-hom-unit";
pub const ANCHOR_TENSOR_UNIT_EV: &str = "tensor-hom-unit-evaluation";
pub const ANCHOR_DECOMPOSITION: &str = "tensor-hom-decomposition";
pub const ANCHOR_TENSOR_LEFT_COMP: &str = "tensor-hom-left-composition";
pub const ANCHOR_TENSOR_RIGHT_COMP: &str = "tensor-hom-right-composition";
pub const ANCHOR_TENSOR_BRAIDED_SWAP: &str = "tensor-hom-braided-swap";
pub const ANCHOR_BRAIDED_COMP: &str = "braided-composition";
pub const ANCHOR_TENSOR_WEAK_ASSOC: &str = "tensor-hom-weak-associativity";
pub const ANCHOR_DOUBLE_BRAIDING: &str = "double-braiding";
pub const ANCHOR_SYMMETRIC: &str = "symmetric-bimodule";
pub const ANCHOR_QUOTIENT: &str = "tensor-over-a-quotient";
pub const ANCHOR_UNITORS: &str = "tensor-over-a-unitors";
pub const ANCHOR_BRAIDING_A: &str = "braiding-descends";
pub const ANCHOR_DESCENT: &str = "tensor-hom-descent";
pub const ANCHOR_GAMMA_ROUNDTRIP: &str = "gamma-roundtrip";
pub const ANCHOR_GAMMA_NATURAL: &str = "gamma-naturality";
pub const ANCHOR_GAMMA_EV: &str = "gamma-ev";
pub const ANCHOR_GAMMA_COMP: &str = "gamma-comp";
pub const ANCHOR_GAMMA_TENSOR: &str = "gamma-tensor";
pub const ANCHOR_GAMMA_EV_A: &str = "gamma-ev-bimodule";
pub const ANCHOR_GAMMA_COMP_A: &str = "gamma-comp-bimodule";
pub const ANCHOR_GAMMA_TENSOR_A: &str = "gamma-tensor-bimodule";
pub const ANCHOR_GAMMA_HOM_A: &str = "gamma-preserves-hom-a";

/// Sample counts and seeds for a suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Samples per identity and per configuration.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { samples: 20, seed: 2024 }
    }
}

type Check<'s> = Box<dyn FnMut(&mut OperatorSampler<'_>) -> Result<Option<String>, BimodError> + 's>;

/// All calculi needed for the suites of one preset.
pub struct HomSuite {
    name: PresetName,
    bimod: BimoduleCalculus,
    comparison: TwistComparison,
    base_bimod: BimoduleCalculus,
}

fn mono(calc: &HomCalculus, m: &PbwMonomial) -> TensorElement {
    let o = calc.order();
    TensorElement::monomial(calc.hopf().lie().clone(), o, vec![m.clone()], HbarPoly::one(o))
}

fn diff(calc: &HomCalculus, label: &str, lhs: &HomOperator, rhs: &HomOperator) -> Option<String> {
    lhs.sub(rhs).first_term(&calc.names(lhs.source().blocks())).map(|t| format!("{label}: {t}"))
}

fn diff_vec(calc: &HomCalculus, label: &str, lhs: &ModuleVec, rhs: &ModuleVec) -> Option<String> {
    lhs.sub(rhs).first_term(&calc.names(lhs.shape().blocks())).map(|t| format!("{label}: {t}"))
}

fn add_into(acc: &mut Option<HomOperator>, t: HomOperator) {
    match acc {
        None => *acc = Some(t),
        Some(a) => a.add_assign(&t),
    }
}

/// Groups the terms of a multi-leg element by a key built from some legs,
/// keeping the rest with the coefficient.
fn group_by<K: Ord>(
    x: &TensorElement,
    key: impl Fn(&[PbwMonomial]) -> K,
) -> BTreeMap<K, Vec<(Vec<PbwMonomial>, HbarPoly)>> {
    let mut out: BTreeMap<K, Vec<(Vec<PbwMonomial>, HbarPoly)>> = BTreeMap::new();
    for (k, c) in x.terms() {
        out.entry(key(k)).or_default().push((k.clone(), c.clone()));
    }
    out
}

impl HomSuite {
    pub fn new(params: &PresetParams, order: usize) -> Result<Self, BimodError> {
        let p = preset(params, order)?;
        let twisted = AlgebraObject::twisted(&p)?;
        let base = AlgebraObject::untwisted(&p);
        Ok(Self {
            name: p.name,
            bimod: BimoduleCalculus::new(twisted)?,
            comparison: TwistComparison::from_preset(&p)?,
            base_bimod: BimoduleCalculus::new(base)?,
        })
    }

    pub fn name(&self) -> PresetName {
        self.name
    }

    pub fn bimodule(&self) -> &BimoduleCalculus {
        &self.bimod
    }

    pub fn comparison(&self) -> &TwistComparison {
        &self.comparison
    }

    fn calc(&self) -> &HomCalculus {
        self.bimod.calc()
    }

    fn run(&self, cfg: &SuiteConfig, stream: u64, big: usize, identity: &str, anchor: &str, profile: SampleProfile, mut check: Check<'_>) -> Report {
        let label = format!("{identity} [{}, A{}]", self.name.as_str(), if big == 1 { "¹" } else { "²" });
        let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(stream * 16 + big as u64);
        let start = Instant::now();
        let mut sampler = OperatorSampler::with_profile(self.calc(), seed, profile);
        let mut residual = None;
        for i in 0..cfg.samples {
            match check(&mut sampler) {
                Ok(None) => {}
                Ok(Some(r)) => {
                    residual = Some(format!("sample {i}: {r}"));
                    break;
                }
                Err(e) => {
                    residual = Some(format!("sample {i}: error: {e}"));
                    break;
                }
            }
        }
        Report::new(&label, anchor, residual, start.elapsed())
    }

    /// Runs every identity in both configurations.
    pub fn run_all(&self, cfg: &SuiteConfig) -> Vec<Report> {
        let mut out = Vec::new();
        for big in [1, 2] {
            out.extend(self.run_closed_structure(cfg, big));
            out.extend(self.run_bimodule(cfg, big));
            out.extend(self.run_tensor(cfg, big));
            out.extend(self.run_gamma(cfg, big));
        }
        out
    }

    // ---- evaluation, composition and invariant homs ----

    pub fn run_closed_structure(&self, cfg: &SuiteConfig, big: usize) -> Vec<Report> {
        let c = self.calc();
        let std = SampleProfile::STANDARD;
        let mut out = Vec::new();
        out.push(self.run(cfg, 1, big, "ev/comp compatibility", ANCHOR_EV_COMP, std, Box::new(|s| {
            let (l, lp, v) = (s.operator(big, big)?, s.operator(big, big)?, s.vector(big));
            self.ev_comp_residual(&l, &lp, &v)
        })));
        out.push(self.run(cfg, 2, big, "theta image is invariant", ANCHOR_THETA_INVARIANT, std, Box::new(|s| {
            let f = s.equivariant(big, big)?;
            c.invariance_residual(&c.theta(&f)?)
        })));
        out.push(self.run(cfg, 3, big, "theta inverse roundtrip", ANCHOR_THETA_ROUNDTRIP, std, Box::new(|s| {
            let f = s.equivariant(big, big)?;
            let back = c.theta_inv(&c.theta(&f)?)?;
            Ok(diff(c, "ϑ⁻¹∘ϑ", &back, &f))
        })));
        out.push(self.run(cfg, 4, big, "theta preserves evaluation", ANCHOR_THETA_EV, std, Box::new(|s| {
            let (f, v) = (s.equivariant(big, big)?, s.vector(big));
            Ok(diff_vec(c, "ev(ϑ(f)⊗v) = f(v)", &c.internal_ev(&c.theta(&f)?, &v)?, &f.apply(&v)?))
        })));
        out.push(self.run(cfg, 5, big, "theta preserves composition", ANCHOR_THETA_COMP, std, Box::new(|s| {
            let (f, g) = (s.equivariant(big, big)?, s.equivariant(big, big)?);
            let lhs = c.internal_comp(&c.theta(&g)?, &c.theta(&f)?)?;
            Ok(diff(c, "ϑ(g)•ϑ(f) = ϑ(g∘f)", &lhs, &c.theta(&g.compose(&f)?)?))
        })));
        out.push(self.run(cfg, 6, big, "composition weak associativity", ANCHOR_COMP_WEAK_ASSOC, std, Box::new(|s| {
            let (l, lp, lpp) = (s.operator(big, big)?, s.operator(big, big)?, s.operator(big, big)?);
            self.comp_weak_assoc_residual(&l, &lp, &lpp)
        })));
        out
    }

    /// `ev((L•L′)⊗v) − Σ ev(φ¹▷L ⊗ ev(φ²▷L′ ⊗ φ³▷v))`.
    pub fn ev_comp_residual(&self, l: &HomOperator, lp: &HomOperator, v: &ModuleVec) -> Result<Option<String>, BimodError> {
        let c = self.calc();
        let lhs = c.internal_ev(&c.internal_comp(l, lp)?, v)?;
        let mut ml = EvalMemo::new(c, l);
        let mut mlp = EvalMemo::new(c, lp);
        let mut rhs = ModuleVec::zero(l.target().clone(), v.nvars(), c.order());
        for (k, coef) in c.hopf().phi().terms() {
            let v3 = c.act(&mono(c, &k[2]), v)?.map(|p| p.scale_series(coef));
            let inner = mlp.get(&k[1])?.apply(&v3)?;
            rhs = rhs.add(&ml.get(&k[0])?.apply(&inner)?);
        }
        Ok(diff_vec(c, "ev/comp", &lhs, &rhs))
    }

    /// `(L•L′)•L″ − Σ (φ¹▷L)•((φ²▷L′)•(φ³▷L″))`.
    pub fn comp_weak_assoc_residual(&self, l: &HomOperator, lp: &HomOperator, lpp: &HomOperator) -> Result<Option<String>, BimodError> {
        let c = self.calc();
        let lhs = c.internal_comp(&c.internal_comp(l, lp)?, lpp)?;
        let mut ml = EvalMemo::new(c, l);
        let mut mlp = EvalMemo::new(c, lp);
        let mut mlpp = EvalMemo::new(c, lpp);
        let mut rhs = None;
        for (m1, rest) in group_by(c.hopf().phi(), |k| k[0].clone()) {
            let mut inner = None;
            for (k, coef) in rest {
                let t = c.internal_comp(&mlp.adjoint(&k[1])?, &mlpp.adjoint(&k[2])?)?.scale_series(&coef);
                add_into(&mut inner, t);
            }
            add_into(&mut rhs, c.internal_comp(&ml.adjoint(&m1)?, &inner.expect("nonempty group"))?);
        }
        Ok(diff(c, "•-associator", &lhs, &rhs.expect("φ is nonzero")))
    }

    // ---- bimodule structure ----

    pub fn run_bimodule(&self, cfg: &SuiteConfig, big: usize) -> Vec<Report> {
        let (b, c) = (&self.bimod, self.calc());
        let std = SampleProfile::STANDARD;
        let one = b.algebra().one();
        let mut out = Vec::new();
        out.push(self.run(cfg, 20, big, "hat-l multiplicativity", ANCHOR_HAT_L_MULT, std, Box::new(|s| {
            let (x, y) = (s.poly(), s.poly());
            let lhs = c.internal_comp(&b.hat_l(&x, big)?, &b.hat_l(&y, big)?)?;
            Ok(diff(c, "l̂(a)•l̂(b) = l̂(a⋆b)", &lhs, &b.hat_l(&b.algebra().star(&x, &y)?, big)?))
        })));
        out.push(self.run(cfg, 21, big, "hat-l unitality", ANCHOR_HAT_L_UNIT, std, Box::new(|_| {
            Ok(diff(c, "l̂(1) = 1", &b.hat_l(&one, big)?, &c.unit_end(&Shape::Leaf(big))?))
        })));
        out.push(self.run(cfg, 22, big, "hat-l evaluation", ANCHOR_HAT_L_EV, std, Box::new(|s| {
            let (x, v) = (s.poly(), s.vector(big));
            Ok(diff_vec(c, "ev(l̂(a)⊗v) = a·v", &c.internal_ev(&b.hat_l(&x, big)?, &v)?, &b.left_act_vec(&x, &v)?))
        })));
        out.push(self.run(cfg, 23, big, "hom bimodule unit", ANCHOR_HOM_UNIT, std, Box::new(|s| {
            let l = s.operator(big, big)?;
            if let Some(r) = diff(c, "1·L = L", &b.left_act_hom(&one, &l)?, &l) {
                return Ok(Some(r));
            }
            Ok(diff(c, "L·1 = L", &b.right_act_hom(&l, &one)?, &l))
        })));
        out.push(self.run(cfg, 24, big, "symmetric bimodule law", ANCHOR_SYMMETRIC, std, Box::new(|s| {
            let (x, v) = (s.poly(), s.vector(big));
            b.symmetric_residual(&x, &v)
        })));
        out.push(self.run(cfg, 25, big, "tensor over A quotient relation", ANCHOR_QUOTIENT, std, Box::new(|s| {
            let (v, x, w) = (s.vector(big), s.poly(), s.vector(big));
            b.quotient_residual(&v, &x, &w)
        })));
        out.push(self.run(cfg, 26, big, "tensor over A unitors", ANCHOR_UNITORS, std, Box::new(|s| {
            let (x, v) = (s.poly(), s.vector(big));
            b.unitor_residual(&x, &v)
        })));
        out.push(self.run(cfg, 27, big, "braiding descends to permutation", ANCHOR_BRAIDING_A, std, Box::new(|s| {
            let (v, w) = (s.vector(big), s.vector(1));
            b.braiding_permutation_residual(&v, &w)
        })));
        out.push(self.run(cfg, 28, big, "double braiding", ANCHOR_DOUBLE_BRAIDING, std, Box::new(|s| {
            let vw = s.vector(big).tensor(&s.vector(1));
            let back = c.braiding_tau(&c.braiding_tau(&vw)?)?;
            Ok(diff_vec(c, "τ∘τ = id", &back, &vw))
        })));
        out
    }

    // ---- tensor product of internal homs ----

    pub fn run_tensor(&self, cfg: &SuiteConfig, big: usize) -> Vec<Report> {
        let c = self.calc();
        let light = SampleProfile::LIGHT;
        let unit = |r: usize| c.unit_end(&Shape::Leaf(r));
        let mut out = Vec::new();
        out.push(self.run(cfg, 40, big, "tensor-hom evaluation contract", ANCHOR_TENSOR_CONTRACT, light, Box::new(|s| {
            let (l, lp) = (s.operator(1, big)?, s.operator(big, 1)?);
            let (v, x) = (s.vector(1), s.vector(big));
            let lhs = c.internal_ev(&c.tensor_hom(&l, &lp)?, &v.tensor(&x))?;
            Ok(diff_vec(c, "ev contract", &lhs, &c.tensor_hom_contract(&l, &lp, &v, &x)?))
        })));
        out.push(self.run(cfg, 41, big, "tensor-hom unit law", ANCHOR_TENSOR_UNIT, light, Box::new(|_| {
            let lhs = c.tensor_hom(&unit(big)?, &unit(1)?)?;
            Ok(diff(c, "1⊗•1 = 1", &lhs, &c.unit_end(&Shape::tensor(&Shape::Leaf(big), &Shape::Leaf(1)))?))
        })));
        out.push(self.run(cfg, 42, big, "tensor-hom unit evaluations", ANCHOR_TENSOR_UNIT_EV, light, Box::new(|s| {
            let (l, lp) = (s.operator(1, big)?, s.operator(1, big)?);
            let (v, x) = (s.vector(1), s.vector(big));
            if let Some(r) = self.right_unit_ev_residual(&l, &v, &x)? {
                return Ok(Some(r));
            }
            self.left_unit_ev_residual(&lp, &x, &v)
        })));
        out.push(self.run(cfg, 43, big, "tensor-hom decomposition", ANCHOR_DECOMPOSITION, light, Box::new(|s| {
            let (l, lp) = (s.operator(1, big)?, s.operator(big, 1)?);
            let lhs = c.tensor_hom(&l, &lp)?;
            let rhs = c.internal_comp(&c.tensor_hom(&l, &unit(1)?)?, &c.tensor_hom(&unit(1)?, &lp)?)?;
            Ok(diff(c, "L⊗•L′ = (L⊗•1)•(1⊗•L′)", &lhs, &rhs))
        })));
        out.push(self.run(cfg, 44, big, "composition then tensor with unit", ANCHOR_TENSOR_LEFT_COMP, light, Box::new(|s| {
            let (l, k) = (s.operator(1, big)?, s.operator(big, 1)?);
            let lhs = c.tensor_hom(&c.internal_comp(&k, &l)?, &unit(1)?)?;
            let rhs = c.internal_comp(&c.tensor_hom(&k, &unit(1)?)?, &c.tensor_hom(&l, &unit(1)?)?)?;
            Ok(diff(c, "(K•L)⊗•1 = (K⊗•1)•(L⊗•1)", &lhs, &rhs))
        })));
        out.push(self.run(cfg, 45, big, "unit tensor with composition", ANCHOR_TENSOR_RIGHT_COMP, light, Box::new(|s| {
            let (lp, kp) = (s.operator(1, big)?, s.operator(big, 1)?);
            let lhs = c.tensor_hom(&unit(1)?, &c.internal_comp(&kp, &lp)?)?;
            let rhs = c.internal_comp(&c.tensor_hom(&unit(1)?, &kp)?, &c.tensor_hom(&unit(1)?, &lp)?)?;
            Ok(diff(c, "1⊗•(K′•L′) = (1⊗•K′)•(1⊗•L′)", &lhs, &rhs))
        })));
        out.push(self.run(cfg, 46, big, "braided swap of tensor factors", ANCHOR_TENSOR_BRAIDED_SWAP, light, Box::new(|s| {
            let (l, lp) = (s.operator(1, big)?, s.operator(big, 1)?);
            self.braided_swap_residual(&l, &lp)
        })));
        out.push(self.run(cfg, 47, big, "braided composition", ANCHOR_BRAIDED_COMP, light, Box::new(|s| {
            let (k, kp) = (s.operator(big, 1)?, s.operator(big, 1)?);
            let (l, lp) = (s.operator(1, big)?, s.operator(1, big)?);
            self.braided_composition_residual(&k, &kp, &l, &lp)
        })));
        out.push(self.run(cfg, 48, big, "tensor-hom weak associativity", ANCHOR_TENSOR_WEAK_ASSOC, light, Box::new(|s| {
            let (l, lp, lpp) = (s.operator(1, big)?, s.operator(big, 1)?, s.operator(1, 1)?);
            self.tensor_weak_assoc_residual(&l, &lp, &lpp)
        })));
        out.push(self.run(cfg, 49, big, "theta preserves tensor product", ANCHOR_THETA_TENSOR, light, Box::new(|s| {
            let (f, g) = (s.equivariant(big, big)?, s.equivariant(1, 1)?);
            let lhs = c.tensor_hom(&c.theta(&f)?, &c.theta(&g)?)?;
            Ok(diff(c, "ϑ(f)⊗•ϑ(g) = ϑ(f⊗g)", &lhs, &c.theta(&f.tensor(&g))?))
        })));
        out
    }

    /// `ev((L⊗•1)⊗(v⊗x)) − Σ ev(ψ¹▷L ⊗ ψ²▷v) ⊗ ψ³▷x`, `ψ = φ⁻¹`.
    pub fn right_unit_ev_residual(&self, l: &HomOperator, v: &ModuleVec, x: &ModuleVec) -> Result<Option<String>, BimodError> {
        let c = self.calc();
        let lhs = c.internal_ev(&c.tensor_hom(l, &c.unit_end(x.shape())?)?, &v.tensor(x))?;
        let mut ml = EvalMemo::new(c, l);
        let nv = v.nvars() + x.nvars();
        let mut rhs = ModuleVec::zero(Shape::tensor(l.target(), x.shape()), nv, c.order());
        for (k, coef) in c.hopf().phi_inv().terms() {
            let left = ml.get(&k[0])?.apply(&c.act(&mono(c, &k[1]), v)?)?;
            let right = c.act(&mono(c, &k[2]), x)?.map(|p| p.scale_series(coef));
            rhs = rhs.add(&left.tensor(&right));
        }
        Ok(diff_vec(c, "ev((L⊗•1)⊗(v⊗x))", &lhs, &rhs))
    }

    /// `ev((1⊗•L′)⊗(v⊗x)) − Σ (φ̃¹R²ψ²▷v) ⊗ ev(φ̃²R¹ψ¹▷L′ ⊗ φ̃³ψ³▷x)`.
    pub fn left_unit_ev_residual(&self, lp: &HomOperator, v: &ModuleVec, x: &ModuleVec) -> Result<Option<String>, BimodError> {
        let c = self.calc();
        let h = c.hopf();
        let (r, _) = h.require_r()?;
        // Legs (v, L′, x).
        let e = h.phi().mul(&r.embed(&[2, 1], 3)).mul(&h.phi_inv().embed(&[2, 1, 3], 3));
        let lhs = c.internal_ev(&c.tensor_hom(&c.unit_end(v.shape())?, lp)?, &v.tensor(x))?;
        let mut mlp = EvalMemo::new(c, lp);
        let nv = v.nvars() + x.nvars();
        let mut rhs = ModuleVec::zero(Shape::tensor(v.shape(), lp.target()), nv, c.order());
        for (k, coef) in e.terms() {
            let ev = mlp.get(&k[1])?;
            if ev.is_zero() {
                continue;
            }
            let left = c.act(&mono(c, &k[0]), v)?.map(|p| p.scale_series(coef));
            let right = ev.apply(&c.act(&mono(c, &k[2]), x)?)?;
            rhs = rhs.add(&left.tensor(&right));
        }
        Ok(diff_vec(c, "ev((1⊗•L′)⊗(v⊗x))", &lhs, &rhs))
    }

    /// `Σ (R²▷L)⊗•(R¹▷L′) − (1⊗•L′)•(L⊗•1)`, the left side in one pass
    /// through `Ξ·R₂₁`.
    pub fn braided_swap_residual(&self, l: &HomOperator, lp: &HomOperator) -> Result<Option<String>, BimodError> {
        let c = self.calc();
        let (r, _) = c.hopf().require_r()?;
        let xi = c.xi_element()?.mul(&r.embed(&[2, 1], 4));
        let lhs = c.tensor_hom_with(&xi, l, lp)?;
        let rhs = c.internal_comp(&c.tensor_hom(&c.unit_end(l.target())?, lp)?, &c.tensor_hom(l, &c.unit_end(lp.source())?)?)?;
        Ok(diff(c, "(R²▷L)⊗•(R¹▷L′) = (1⊗•L′)•(L⊗•1)", &lhs, &rhs))
    }

    /// `(K⊗•K′)•(L⊗•L′) − Σ (Ω₁▷K • Ω₃▷L) ⊗• (Ω₂▷K′ • Ω₄▷L′)`, where `Ω`
    /// is the associator–braiding element of the tensor-hom composite.
    pub fn braided_composition_residual(
        &self,
        k: &HomOperator,
        kp: &HomOperator,
        l: &HomOperator,
        lp: &HomOperator,
    ) -> Result<Option<String>, BimodError> {
        let c = self.calc();
        let lhs = c.internal_comp(&c.tensor_hom(k, kp)?, &c.tensor_hom(l, lp)?)?;
        let (mut mk, mut mkp, mut ml, mut mlp) = (EvalMemo::new(c, k), EvalMemo::new(c, kp), EvalMemo::new(c, l), EvalMemo::new(c, lp));
        let mut right_cache: HashMap<(PbwMonomial, PbwMonomial), HomOperator> = HashMap::new();
        let mut rhs = None;
        for ((m1, m3), rest) in group_by(c.omega_element()?, |k| (k[0].clone(), k[2].clone())) {
            let left = c.internal_comp(&mk.adjoint(&m1)?, &ml.adjoint(&m3)?)?;
            if left.is_zero() {
                continue;
            }
            let mut right = None;
            for (key, coef) in rest {
                let pair = (key[1].clone(), key[3].clone());
                let t = match right_cache.get(&pair) {
                    Some(t) => t.clone(),
                    None => {
                        let t = c.internal_comp(&mkp.adjoint(&pair.0)?, &mlp.adjoint(&pair.1)?)?;
                        right_cache.insert(pair, t.clone());
                        t
                    }
                };
                add_into(&mut right, t.scale_series(&coef));
            }
            let right = right.expect("nonempty group");
            if !right.is_zero() {
                add_into(&mut rhs, c.tensor_hom(&left, &right)?);
            }
        }
        let rhs = rhs.unwrap_or_else(|| HomOperator::zero(lhs.source().clone(), lhs.target().clone(), lhs.nvars(), lhs.order()));
        Ok(diff(c, "braided composition", &lhs, &rhs))
    }

    /// `Φ∘((L⊗•L′)⊗•L″)∘Φ⁻¹ − Σ φ¹▷L ⊗• (φ²▷L′ ⊗• φ³▷L″)`.
    pub fn tensor_weak_assoc_residual(&self, l: &HomOperator, lp: &HomOperator, lpp: &HomOperator) -> Result<Option<String>, BimodError> {
        let c = self.calc();
        let inner = c.tensor_hom(&c.tensor_hom(l, lp)?, lpp)?;
        let phi_t = c.associator(l.target(), lp.target(), lpp.target(), false)?;
        let phi_s = c.associator(l.source(), lp.source(), lpp.source(), true)?;
        let lhs = phi_t.compose(&inner.compose(&phi_s)?)?;
        let mut ml = EvalMemo::new(c, l);
        let mut rhs = None;
        for (m1, rest) in group_by(c.hopf().phi(), |k| k[0].clone()) {
            let mut pair = TensorElement::zero(c.hopf().lie().clone(), 2, c.order());
            for (key, coef) in rest {
                pair.add_term(key[1..].to_vec(), coef);
            }
            let xi = c.xi_element()?.mul(&pair.embed(&[1, 2], 4));
            let right = c.tensor_hom_with(&xi, lp, lpp)?;
            add_into(&mut rhs, c.tensor_hom(&ml.adjoint(&m1)?, &right)?);
        }
        Ok(diff(c, "⊗•-associator", &lhs, &rhs.expect("φ is nonzero")))
    }

    // ---- comparison under the twist ----

    /// A right `A_F`-linear operator `A^m → A^n`: a matrix of `l̂(a_ij)`
    /// entries, `a_ij` within the sample profile, plus a scalar multiple of the unit when square.
    pub fn hom_a_sample(&self, s: &mut OperatorSampler<'_>, source: usize, target: usize) -> Result<HomOperator, BimodError> {
        let b = &self.bimod;
        let mut entries = Vec::with_capacity(source * target);
        for _ in 0..source * target {
            let a = s.coefficient();
            entries.push(b.hat_l(&a, 1)?.entries()[0].clone());
        }
        let mut out = HomOperator::from_entries(Shape::Leaf(source), Shape::Leaf(target), entries)?;
        if source == target {
            let unit = self.calc().unit_end(&Shape::Leaf(source))?;
            out.add_assign(&unit.scale(&s.rng().scalar()));
        }
        Ok(out)
    }

    pub fn run_gamma(&self, cfg: &SuiteConfig, big: usize) -> Vec<Report> {
        let (g, c) = (&self.comparison, self.calc());
        let tw = g.twisted();
        let (std, light) = (SampleProfile::STANDARD, SampleProfile::LIGHT);
        let gens = c.hopf().sample_monomials(2);
        let mut out = Vec::new();
        out.push(self.run(cfg, 60, big, "gamma inverse roundtrip", ANCHOR_GAMMA_ROUNDTRIP, std, Box::new(|s| {
            g.check_roundtrip(&s.operator(big, big)?)
        })));
        out.push(self.run(cfg, 61, big, "gamma naturality", ANCHOR_GAMMA_NATURAL, std, Box::new(|s| {
            let h = gens[s.rng().index(gens.len())].clone();
            g.check_naturality(&h, &s.operator(big, big)?)
        })));
        out.push(self.run(cfg, 62, big, "gamma evaluation diagram", ANCHOR_GAMMA_EV, std, Box::new(|s| {
            let (l, v) = (s.operator(big, big)?, s.vector(big));
            g.check_ev(&l, &v)
        })));
        out.push(self.run(cfg, 63, big, "gamma composition diagram", ANCHOR_GAMMA_COMP, std, Box::new(|s| {
            let (l, lp) = (s.operator(big, big)?, s.operator(big, big)?);
            g.check_comp(&l, &lp)
        })));
        out.push(self.run(cfg, 64, big, "gamma tensor diagram", ANCHOR_GAMMA_TENSOR, light, Box::new(|s| {
            let (l, lp) = (s.operator(1, big)?, s.operator(big, 1)?);
            g.check_tensor(&l, &lp)
        })));
        out.push(self.run(cfg, 65, big, "gamma evaluation diagram over A", ANCHOR_GAMMA_EV_A, std, Box::new(|s| {
            let (l, v) = (self.hom_a_sample(s, big, big)?, s.vector(big));
            g.check_ev(&l, &v)
        })));
        out.push(self.run(cfg, 66, big, "gamma composition diagram over A", ANCHOR_GAMMA_COMP_A, std, Box::new(|s| {
            let (l, lp) = (self.hom_a_sample(s, big, big)?, self.hom_a_sample(s, big, big)?);
            g.check_comp(&l, &lp)
        })));
        out.push(self.run(cfg, 67, big, "gamma tensor diagram over A", ANCHOR_GAMMA_TENSOR_A, light, Box::new(|s| {
            let (l, lp) = (self.hom_a_sample(s, 1, big)?, self.hom_a_sample(s, big, 1)?);
            g.check_tensor_collapsed(&l, &lp)
        })));
        out.push(self.run(cfg, 68, big, "tensor-hom descends to tensor over A", ANCHOR_DESCENT, light, Box::new(|s| {
            let (l, lp) = (self.hom_a_sample(s, 1, big)?, self.hom_a_sample(s, big, 1)?);
            let y = s.vector(1).tensor(&s.vector(big));
            self.bimod.descent_residual(&tw.tensor_hom(&l, &lp)?, &y)
        })));
        out.push(self.run(cfg, 69, big, "gamma maps hom over A_F into hom over A", ANCHOR_GAMMA_HOM_A, std, Box::new(|s| {
            let l = self.hom_a_sample(s, big, big)?;
            let own = self.bimod.is_right_a_linear(&l, 1);
            if let Some(r) = own.residual {
                return Ok(Some(format!("sample not A_F-linear: {r}")));
            }
            Ok(self.base_bimod.is_right_a_linear(&g.gamma(&l)?, 1).residual)
        })));
        out
    }
}

/// Builds the suite for `params` and runs everything.
pub fn run_suite(params: &PresetParams, order: usize, cfg: &SuiteConfig) -> Result<Vec<Report>, BimodError> {
    Ok(HomSuite::new(params, order)?.run_all(cfg))
}

