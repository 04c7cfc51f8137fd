//! Sparse elements of `U𝔤^{⊗n}[[ℏ]]` truncated at a fixed order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::CoreError;
use crate::lie::{Gen, LiePresentation, PbwMonomial};
use crate::scalar::GaussianRational;
use crate::series::HbarPoly;

/// Key of a term: one PBW monomial per tensor leg.
pub type LegKey = Vec<PbwMonomial>;

/// An element of `H^{⊗n}[[ℏ]]` modulo `ℏ^{N+1}`, stored as a sparse map from
/// leg keys to series coefficients. No stored coefficient is zero.
///
/// Zero legs are allowed and represent plain scalars; this keeps counit
/// contractions inside the same type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    lie: Arc<LiePresentation>,
    legs: usize,
    order: usize,
    terms: BTreeMap<LegKey, HbarPoly>,
}

/// A factor of a leg contraction; see [`TensorElement::contract`].
#[derive(Clone, Copy, Debug)]
pub enum Slot<'a> {
    /// The component of the contracted element on this (0-based) leg.
    Leg(usize),
    /// A fixed one-leg element.
    Elem(&'a TensorElement),
}

/// Whether a structure map preserves or reverses products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    AntiHomomorphism,
}

impl TensorElement {
    pub fn zero(lie: Arc<LiePresentation>, legs: usize, order: usize) -> Self {
        Self { lie, legs, order, terms: BTreeMap::new() }
    }

    /// The unit `1⊗…⊗1`.
    pub fn one(lie: Arc<LiePresentation>, legs: usize, order: usize) -> Self {
        Self::scalar(lie, legs, HbarPoly::one(order))
    }

    /// `s·(1⊗…⊗1)`.
    pub fn scalar(lie: Arc<LiePresentation>, legs: usize, s: HbarPoly) -> Self {
        let order = s.order();
        let mut e = Self::zero(lie, legs, order);
        e.add_term(vec![PbwMonomial::unit(); legs], s);
        e
    }

    /// The one-leg element `g`.
    pub fn generator(lie: Arc<LiePresentation>, g: Gen, order: usize) -> Self {
        Self::monomial(lie, order, vec![PbwMonomial::generator(g)], HbarPoly::one(order))
    }

    /// A single term with an already normal-ordered key.
    pub fn monomial(lie: Arc<LiePresentation>, order: usize, key: LegKey, c: HbarPoly) -> Self {
        let mut e = Self::zero(lie, key.len(), order);
        e.add_term(key, c);
        e
    }

    /// `c · w_1 ⊗ … ⊗ w_n` for arbitrary generator words, normal-ordering each leg.
    pub fn from_words(lie: Arc<LiePresentation>, order: usize, words: &[&[Gen]], c: HbarPoly) -> Self {
        let mut out = Self::scalar(lie.clone(), 0, c);
        for w in words {
            let mut leg = Self::zero(lie.clone(), 1, order);
            for (m, s) in lie.normal_order_word(w) {
                leg.add_term(vec![m], HbarPoly::constant(s, order));
            }
            out = out.tensor(&leg);
        }
        out
    }

    pub fn lie(&self) -> &Arc<LiePresentation> {
        &self.lie
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<LegKey, HbarPoly> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &[PbwMonomial]) -> HbarPoly {
        self.terms.get(key).cloned().unwrap_or_else(|| HbarPoly::zero(self.order))
    }

    /// Adds `c` to the coefficient of `key`, pruning a resulting zero.
    pub fn add_term(&mut self, key: LegKey, c: HbarPoly) {
        debug_assert_eq!(key.len(), self.legs);
        debug_assert_eq!(c.order(), self.order);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_shape(&self, o: &Self) {
        assert_eq!(self.legs, o.legs, "leg counts differ");
        assert_eq!(self.order, o.order, "truncation orders differ");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_shape(o);
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn scale_series(&self, s: &HbarPoly) -> Self {
        self.map_coeffs(|c| c.mul(s))
    }

    fn map_coeffs(&self, f: impl Fn(&HbarPoly) -> HbarPoly) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { lie: self.lie.clone(), legs: self.legs, order: self.order, terms }
    }

    /// Leg-wise product, rewriting each leg into the PBW basis. Panics on leg or
    /// order mismatch; see [`nc_mul`] for the checked form.
    pub fn mul(&self, o: &Self) -> Self {
        self.same_shape(o);
        let n = self.order;
        let mut out = Self::zero(self.lie.clone(), self.legs, n);
        if self.is_zero() || o.is_zero() {
            return out;
        }
        let rhs: Vec<_> = o.terms.iter().map(|(k, c)| (k, c, c.valuation().unwrap())).collect();
        for (k1, c1) in &self.terms {
            let v1 = c1.valuation().unwrap();
            for &(k2, c2, v2) in &rhs {
                if v1 + v2 > n {
                    continue;
                }
                let c = c1.mul(c2);
                let mut partial: Vec<(LegKey, GaussianRational)> =
                    vec![(Vec::with_capacity(self.legs), GaussianRational::one())];
                for leg in 0..self.legs {
                    let prod = self.lie.mul_monomials(&k1[leg], &k2[leg]);
                    if prod.len() == 1 {
                        let (m, s) = &prod[0];
                        for (key, acc) in partial.iter_mut() {
                            key.push(m.clone());
                            if !s.is_one() {
                                *acc = &*acc * s;
                            }
                        }
                    } else {
                        let mut next = Vec::with_capacity(partial.len() * prod.len());
                        for (key, acc) in &partial {
                            for (m, s) in &prod {
                                let mut k = key.clone();
                                k.push(m.clone());
                                next.push((k, acc * s));
                            }
                        }
                        partial = next;
                    }
                }
                for (key, s) in partial {
                    let term = if s.is_one() { c.clone() } else { c.scale(&s) };
                    out.add_term(key, term);
                }
            }
        }
        out
    }

    /// `self^k` (with `self^0` the unit).
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.lie.clone(), self.legs, self.order);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The outer tensor product `self ⊗ o`, with `self`'s legs first.
    pub fn tensor(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order, "truncation orders differ");
        let mut out = Self::zero(self.lie.clone(), self.legs + o.legs, self.order);
        for (k1, c1) in &self.terms {
            let v1 = c1.valuation().unwrap();
            for (k2, c2) in &o.terms {
                if v1 + c2.valuation().unwrap() > self.order {
                    continue;
                }
                let mut k = k1.clone();
                k.extend(k2.iter().cloned());
                out.add_term(k, c1.mul(c2));
            }
        }
        out
    }

    /// Places component `j` on leg `positions[j]` (1-based) of an `n`-leg
    /// element, with units elsewhere.
    pub fn leg_embed(&self, positions: &[usize], n: usize) -> Result<Self, CoreError> {
        let bad = || CoreError::InvalidPositions { positions: positions.to_vec(), legs: n };
        if positions.len() != self.legs {
            return Err(bad());
        }
        for (j, &p) in positions.iter().enumerate() {
            if p == 0 || p > n || positions[..j].contains(&p) {
                return Err(bad());
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut key = vec![PbwMonomial::unit(); n];
                for (j, &p) in positions.iter().enumerate() {
                    key[p - 1] = k[j].clone();
                }
                (key, c.clone())
            })
            .collect();
        Ok(Self { lie: self.lie.clone(), legs: n, order: self.order, terms })
    }

    /// Infallible form of [`Self::leg_embed`] for positions known to be valid.
    pub fn embed(&self, positions: &[usize], n: usize) -> Self {
        self.leg_embed(positions, n).expect("valid leg positions")
    }

    /// Swaps the two legs of a two-leg element (`X ↦ X₂₁`).
    pub fn flip(&self) -> Self {
        self.embed(&[2, 1], 2)
    }

    /// The part of the element at `ℏ^0`.
    pub fn order_zero_part(&self) -> Self {
        self.map_coeffs(|c| HbarPoly::constant(c.coeff(0).clone(), c.order()))
    }

    /// Smallest ℏ-degree occurring, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(HbarPoly::valuation).min()
    }

    /// `Σ_{k≤N} X^k / k!`; requires a vanishing order-0 part.
    pub fn exp_truncated(&self) -> Result<Self, CoreError> {
        if self.terms.values().any(|c| !c.coeff(0).is_zero()) {
            return Err(CoreError::NonzeroOrderZero);
        }
        let mut term = Self::one(self.lie.clone(), self.legs, self.order);
        let mut sum = term.clone();
        for k in 1..=self.order {
            term = term.mul(self).scale(&GaussianRational::ratio(1, k as i64));
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    /// `Σ_{1≤k≤N} (−1)^{k+1} (X−1)^k / k`; requires `X = 1 + O(ℏ)`.
    pub fn log_truncated(&self) -> Result<Self, CoreError> {
        let y = self.sub(&Self::one(self.lie.clone(), self.legs, self.order));
        if y.terms.values().any(|c| !c.coeff(0).is_zero()) {
            return Err(CoreError::NonzeroOrderZero);
        }
        let mut power = y.clone();
        let mut sum = y.clone();
        for k in 2..=self.order {
            power = power.mul(&y);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 0 { -1 } else { 1 };
            sum = sum.add(&power.scale(&GaussianRational::ratio(sign, k as i64)));
        }
        Ok(sum)
    }

    /// Replaces leg `leg` (0-based) by `k` legs using `image` on its monomials:
    /// `x₁⊗…⊗m⊗…⊗x_n ↦ x₁⊗…⊗image(m)⊗…⊗x_n`. With `k = 0` the leg is
    /// contracted to a scalar (as for the counit).
    pub fn expand_leg<F>(&self, leg: usize, k: usize, mut image: F) -> Self
    where
        F: FnMut(&PbwMonomial) -> TensorElement,
    {
        assert!(leg < self.legs, "leg out of range");
        let mut cache: HashMap<PbwMonomial, TensorElement> = HashMap::new();
        let mut out = Self::zero(self.lie.clone(), self.legs - 1 + k, self.order);
        for (key, c) in &self.terms {
            let img = cache.entry(key[leg].clone()).or_insert_with(|| {
                let e = image(&key[leg]);
                assert_eq!(e.legs, k, "image has the wrong number of legs");
                e
            });
            let v = c.valuation().unwrap();
            for (ikey, ic) in &img.terms {
                if v + ic.valuation().unwrap() > self.order {
                    continue;
                }
                let mut nk = Vec::with_capacity(self.legs - 1 + k);
                nk.extend(key[..leg].iter().cloned());
                nk.extend(ikey.iter().cloned());
                nk.extend(key[leg + 1..].iter().cloned());
                out.add_term(nk, c.mul(ic));
            }
        }
        out
    }

    /// Multiplies leg components and fixed elements together in groups: the
    /// result has one leg per group, group `g` carrying the ordered product of
    /// its slots. For example `[[Leg(0), Elem(β), Leg(1)]]` on `X` gives
    /// `Σ X¹ β X²`.
    pub fn contract(&self, groups: &[Vec<Slot<'_>>]) -> Self {
        let mut out = Self::zero(self.lie.clone(), groups.len(), self.order);
        for (key, c) in &self.terms {
            let mut acc = Self::scalar(self.lie.clone(), 0, c.clone());
            for group in groups {
                let mut prod = Self::one(self.lie.clone(), 1, self.order);
                for slot in group {
                    prod = match slot {
                        Slot::Leg(i) => prod.mul_monomial_right(&key[*i]),
                        Slot::Elem(e) => prod.mul(e),
                    };
                }
                acc = acc.tensor(&prod);
            }
            out = out.add(&acc);
        }
        out
    }

    /// One-leg product `self · m` for a single monomial.
    fn mul_monomial_right(&self, m: &PbwMonomial) -> Self {
        if m.is_unit() {
            return self.clone();
        }
        let mut out = Self::zero(self.lie.clone(), 1, self.order);
        for (k, c) in &self.terms {
            for (p, s) in self.lie.mul_monomials(&k[0], m) {
                out.add_term(vec![p], c.scale(&s));
            }
        }
        out
    }

    /// Renders the first term in key order, used as a residual witness.
    pub fn first_term(&self) -> Option<String> {
        self.terms.iter().next().map(|(k, c)| self.render_term(k, c))
    }

    fn render_term(&self, k: &[PbwMonomial], c: &HbarPoly) -> String {
        let legs: Vec<String> = k.iter().map(|m| self.lie.render_monomial(m)).collect();
        if legs.is_empty() {
            format!("({c})")
        } else {
            format!("({c}) {}", legs.join(" ⊗ "))
        }
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| self.render_term(k, c)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Rewrites a generator word into the PBW basis as a one-leg element.
pub fn normal_order(word: &[Gen], lie: &Arc<LiePresentation>, order: usize) -> TensorElement {
    TensorElement::from_words(lie.clone(), order, &[word], HbarPoly::one(order))
}

/// Checked leg-wise product.
pub fn nc_mul(x: &TensorElement, y: &TensorElement) -> Result<TensorElement, CoreError> {
    if x.legs != y.legs {
        return Err(CoreError::LegMismatch(x.legs, y.legs));
    }
    if x.order != y.order {
        return Err(CoreError::OrderMismatch(x.order, y.order));
    }
    if x.lie != y.lie {
        return Err(CoreError::PresentationMismatch);
    }
    Ok(x.mul(y))
}

/// Extends generator images to the whole enveloping algebra as an algebra
/// (anti-)homomorphism and applies it to the one-leg element `x`.
///
/// `images[g]` is the image of generator `g`; all images must share a leg
/// count, which becomes the leg count of the result.
pub fn extend_structure_map(
    kind: MapKind,
    images: &[TensorElement],
    x: &TensorElement,
) -> Result<TensorElement, CoreError> {
    assert_eq!(x.legs, 1, "structure maps act on one-leg elements");
    let lie = x.lie.clone();
    let legs = images.first().map_or(1, TensorElement::legs);
    let mut out = TensorElement::zero(lie.clone(), legs, x.order);
    for (key, c) in &x.terms {
        let word = key[0].factors();
        let mut prod = TensorElement::one(lie.clone(), legs, x.order);
        let mut apply = |g: Gen| -> Result<(), CoreError> {
            let img = images
                .get(g as usize)
                .ok_or_else(|| CoreError::MissingImage(lie.name(g).to_string()))?;
            prod = prod.mul(img);
            Ok(())
        };
        match kind {
            MapKind::Homomorphism => word.iter().try_for_each(|&g| apply(g))?,
            MapKind::AntiHomomorphism => word.iter().rev().try_for_each(|&g| apply(g))?,
        }
        out = out.add(&prod.scale_series(c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abelian2(order: usize) -> Arc<LiePresentation> {
        let _ = order;
        Arc::new(LiePresentation::abelian(vec!["t1".into(), "t2".into()]).unwrap())
    }

    fn m(f: &[Gen]) -> PbwMonomial {
        PbwMonomial::from_sorted(f.to_vec())
    }

    #[test]
    fn leg_embedding_layout() {
        let lie = abelian2(2);
        let x = TensorElement::monomial(lie, 2, vec![m(&[0]), m(&[1])], HbarPoly::one(2));
        let y = x.leg_embed(&[3, 1], 3).unwrap();
        assert_eq!(y.terms().keys().next().unwrap(), &vec![m(&[1]), m(&[]), m(&[0])]);
        assert!(x.leg_embed(&[1, 1], 3).is_err());
        assert!(x.leg_embed(&[1, 4], 3).is_err());
        assert_eq!(x.leg_embed(&[1, 2], 2).unwrap(), x);
    }

    #[test]
    fn abelian_product() {
        let lie = abelian2(2);
        let a = TensorElement::monomial(lie.clone(), 2, vec![m(&[0]), m(&[1])], HbarPoly::one(2));
        let b = TensorElement::monomial(lie, 2, vec![m(&[1]), m(&[0])], HbarPoly::one(2));
        let p = a.mul(&b);
        assert_eq!(p.terms().keys().next().unwrap(), &vec![m(&[0, 1]), m(&[0, 1])]);
    }

    #[test]
    fn exp_of_hbar_term() {
        let lie = abelian2(2);
        let h = HbarPoly::monomial(1, GaussianRational::one(), 2);
        let x = TensorElement::monomial(lie.clone(), 2, vec![m(&[0]), m(&[1])], h);
        let e = x.exp_truncated().unwrap();
        let mut expect = TensorElement::one(lie.clone(), 2, 2).add(&x);
        expect.add_term(
            vec![m(&[0, 0]), m(&[1, 1])],
            HbarPoly::monomial(2, GaussianRational::ratio(1, 2), 2),
        );
        assert_eq!(e, expect);
        let bad = TensorElement::monomial(lie, 2, vec![m(&[0]), m(&[])], HbarPoly::one(2));
        assert_eq!(bad.exp_truncated(), Err(CoreError::NonzeroOrderZero));
    }

    #[test]
    fn log_inverts_exp() {
        let lie = abelian2(3);
        let h = HbarPoly::monomial(1, GaussianRational::one(), 3);
        let x = TensorElement::monomial(lie.clone(), 3, vec![m(&[0]), m(&[1])], h.clone())
            .add(&TensorElement::monomial(lie.clone(), 3, vec![m(&[1]), m(&[0, 1])], h.mul(&h)));
        assert_eq!(x.exp_truncated().unwrap().log_truncated().unwrap(), x);
        let bad = TensorElement::monomial(lie, 3, vec![m(&[0]), m(&[])], HbarPoly::one(3));
        assert_eq!(bad.log_truncated(), Err(CoreError::NonzeroOrderZero));
    }

    #[test]
    fn contraction_of_legs() {
        let lie = abelian2(1);
        let x = TensorElement::monomial(lie.clone(), 1, vec![m(&[0]), m(&[1])], HbarPoly::one(1));
        let y = x.contract(&[vec![Slot::Leg(1), Slot::Leg(0)]]);
        assert_eq!(y, TensorElement::monomial(lie, 1, vec![m(&[0, 1])], HbarPoly::one(1)));
    }
}
