//! Quasi-Hopf algebra structure on a truncated enveloping algebra.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use qtwist_core::{
    CoreError, Gen, GaussianRational, HbarPoly, LiePresentation, PbwMonomial, TensorElement,
};

use crate::error::HopfError;

/// Inverse of an element whose order-0 part is exactly the unit, via the
/// terminating Neumann series `(1 + Y)^{-1} = Σ_{k≤N} (−Y)^k`.
pub fn invert_element(x: &TensorElement) -> Result<TensorElement, HopfError> {
    let unit = TensorElement::one(x.lie().clone(), x.legs(), x.order());
    if x.order_zero_part() != unit {
        return Err(CoreError::NonUnitOrderZero.into());
    }
    let minus_y = unit.sub(x);
    let mut term = unit.clone();
    let mut sum = unit;
    for _ in 0..x.order() {
        term = term.mul(&minus_y);
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term);
    }
    Ok(sum)
}

/// Raw structure data of a quasi-Hopf algebra: generator images of `Δ`, `ε`,
/// `S`, the elements `α`, `β`, the associator `φ` and optionally an R-matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiHopfParts {
    pub lie: Arc<LiePresentation>,
    pub order: usize,
    pub delta_gen: Vec<TensorElement>,
    pub epsilon_gen: Vec<GaussianRational>,
    pub antipode_gen: Vec<TensorElement>,
    pub alpha: TensorElement,
    pub beta: TensorElement,
    pub phi: TensorElement,
    pub r_matrix: Option<TensorElement>,
}

#[derive(Debug, Default)]
struct Memo {
    delta: HashMap<PbwMonomial, TensorElement>,
    antipode: HashMap<PbwMonomial, TensorElement>,
}

/// A validated quasi-Hopf algebra. Structure maps are extended from generator
/// images as algebra (anti-)homomorphisms; images of monomials are memoized.
#[derive(Debug, Clone)]
pub struct QuasiHopfData {
    parts: QuasiHopfParts,
    phi_inv: TensorElement,
    r_inv: Option<TensorElement>,
    memo: Arc<Mutex<Memo>>,
}

impl PartialEq for QuasiHopfData {
    fn eq(&self, o: &Self) -> bool {
        self.parts == o.parts
    }
}

impl Eq for QuasiHopfData {}

fn expect_legs(e: &TensorElement, legs: usize, what: &'static str) -> Result<(), HopfError> {
    if e.legs() != legs {
        return Err(HopfError::Shape { what, got: e.legs(), expected: legs });
    }
    Ok(())
}

impl QuasiHopfData {
    pub fn from_parts(parts: QuasiHopfParts) -> Result<Self, HopfError> {
        let d = parts.lie.len();
        for (what, got) in [
            ("coproduct images", parts.delta_gen.len()),
            ("counit images", parts.epsilon_gen.len()),
            ("antipode images", parts.antipode_gen.len()),
        ] {
            if got != d {
                return Err(HopfError::Shape { what, got, expected: d });
            }
        }
        for e in &parts.delta_gen {
            expect_legs(e, 2, "coproduct image legs")?;
        }
        for e in &parts.antipode_gen {
            expect_legs(e, 1, "antipode image legs")?;
        }
        expect_legs(&parts.alpha, 1, "alpha legs")?;
        expect_legs(&parts.beta, 1, "beta legs")?;
        expect_legs(&parts.phi, 3, "associator legs")?;
        let phi_inv =
            invert_element(&parts.phi).map_err(|_| HopfError::NotInvertible("associator"))?;
        let r_inv = match &parts.r_matrix {
            Some(r) => {
                expect_legs(r, 2, "R-matrix legs")?;
                Some(invert_element(r).map_err(|_| HopfError::NotInvertible("R-matrix"))?)
            }
            None => None,
        };
        Ok(Self { parts, phi_inv, r_inv, memo: Arc::default() })
    }

    /// The enveloping algebra of `lie` with primitive coproduct, vanishing
    /// counit on generators, `S(ξ) = −ξ`, `α = β = 1`, trivial associator and
    /// R-matrix `1⊗1`.
    pub fn universal_enveloping(lie: Arc<LiePresentation>, order: usize) -> Self {
        let d = lie.len() as Gen;
        let one = TensorElement::one(lie.clone(), 1, order);
        let gens: Vec<_> = (0..d).map(|g| TensorElement::generator(lie.clone(), g, order)).collect();
        let parts = QuasiHopfParts {
            delta_gen: gens.iter().map(|x| x.tensor(&one).add(&one.tensor(x))).collect(),
            epsilon_gen: vec![GaussianRational::zero(); d as usize],
            antipode_gen: gens.iter().map(TensorElement::neg).collect(),
            alpha: one.clone(),
            beta: one,
            phi: TensorElement::one(lie.clone(), 3, order),
            r_matrix: Some(TensorElement::one(lie.clone(), 2, order)),
            lie,
            order,
        };
        Self::from_parts(parts).expect("enveloping algebra data is well formed")
    }

    pub fn parts(&self) -> &QuasiHopfParts {
        &self.parts
    }

    pub fn lie(&self) -> &Arc<LiePresentation> {
        &self.parts.lie
    }

    pub fn order(&self) -> usize {
        self.parts.order
    }

    pub fn alpha(&self) -> &TensorElement {
        &self.parts.alpha
    }

    pub fn beta(&self) -> &TensorElement {
        &self.parts.beta
    }

    pub fn phi(&self) -> &TensorElement {
        &self.parts.phi
    }

    pub fn phi_inv(&self) -> &TensorElement {
        &self.phi_inv
    }

    pub fn r_matrix(&self) -> Option<&TensorElement> {
        self.parts.r_matrix.as_ref()
    }

    pub fn r_inv(&self) -> Option<&TensorElement> {
        self.r_inv.as_ref()
    }

    pub fn require_r(&self) -> Result<(&TensorElement, &TensorElement), HopfError> {
        match (&self.parts.r_matrix, &self.r_inv) {
            (Some(r), Some(ri)) => Ok((r, ri)),
            _ => Err(HopfError::MissingRMatrix),
        }
    }

    /// `1⊗…⊗1` with the given number of legs.
    pub fn unit(&self, legs: usize) -> TensorElement {
        TensorElement::one(self.parts.lie.clone(), legs, self.parts.order)
    }

    pub fn generator(&self, g: Gen) -> TensorElement {
        TensorElement::generator(self.parts.lie.clone(), g, self.parts.order)
    }

    /// `Δ` of a PBW monomial.
    pub fn delta_monomial(&self, m: &PbwMonomial) -> TensorElement {
        if let Some(e) = self.memo.lock().unwrap().delta.get(m) {
            return e.clone();
        }
        let mut prod = self.unit(2);
        for &g in m.factors() {
            prod = prod.mul(&self.parts.delta_gen[g as usize]);
        }
        self.memo.lock().unwrap().delta.insert(m.clone(), prod.clone());
        prod
    }

    /// `S` of a PBW monomial.
    pub fn antipode_monomial(&self, m: &PbwMonomial) -> TensorElement {
        if let Some(e) = self.memo.lock().unwrap().antipode.get(m) {
            return e.clone();
        }
        let mut prod = self.unit(1);
        for &g in m.factors().iter().rev() {
            prod = prod.mul(&self.parts.antipode_gen[g as usize]);
        }
        self.memo.lock().unwrap().antipode.insert(m.clone(), prod.clone());
        prod
    }

    /// `ε` of a PBW monomial.
    pub fn counit_monomial(&self, m: &PbwMonomial) -> GaussianRational {
        let mut c = GaussianRational::one();
        for &g in m.factors() {
            c = &c * &self.parts.epsilon_gen[g as usize];
        }
        c
    }

    /// Applies `Δ` to leg `leg` (0-based), adding one leg.
    pub fn coproduct_on_leg(&self, x: &TensorElement, leg: usize) -> TensorElement {
        x.expand_leg(leg, 2, |m| self.delta_monomial(m))
    }

    /// Applies `S` to leg `leg` (0-based).
    pub fn antipode_on_leg(&self, x: &TensorElement, leg: usize) -> TensorElement {
        x.expand_leg(leg, 1, |m| self.antipode_monomial(m))
    }

    /// Applies `ε` to leg `leg` (0-based), removing it.
    pub fn counit_on_leg(&self, x: &TensorElement, leg: usize) -> TensorElement {
        let (lie, order) = (self.parts.lie.clone(), self.parts.order);
        x.expand_leg(leg, 0, |m| {
            TensorElement::scalar(lie.clone(), 0, HbarPoly::constant(self.counit_monomial(m), order))
        })
    }

    pub fn coproduct(&self, x: &TensorElement) -> TensorElement {
        self.coproduct_on_leg(x, 0)
    }

    pub fn antipode(&self, x: &TensorElement) -> TensorElement {
        self.antipode_on_leg(x, 0)
    }

    /// `ε(x)` for a one-leg element.
    pub fn counit(&self, x: &TensorElement) -> HbarPoly {
        let s = self.counit_on_leg(x, 0);
        s.coefficient(&[])
    }

    /// Normal-ordered monomials of degree `1..=max_len`: the generators and
    /// their products, used to sample the multiplicative structure maps.
    pub fn sample_monomials(&self, max_len: usize) -> Vec<TensorElement> {
        let d = self.parts.lie.len() as Gen;
        let mut layer: Vec<Vec<Gen>> = vec![Vec::new()];
        let mut out = Vec::new();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                let start = w.last().copied().unwrap_or(0);
                for g in start..d {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
            for w in &next {
                out.push(TensorElement::monomial(
                    self.parts.lie.clone(),
                    self.parts.order,
                    vec![PbwMonomial::from_sorted(w.clone())],
                    HbarPoly::one(self.parts.order),
                ));
            }
            layer = next;
        }
        out
    }
}
