//! Differential operators with polynomial coefficients in Weyl normal form.

use std::collections::BTreeMap;

use qtwist_core::{GaussianRational, HbarPoly};

use crate::poly::{Exponents, PolyFunction};

/// A differential operator `Σ_α c_α(x) ∂^α` with coefficients written to the
/// left of all derivatives. This normal form is canonical: two operators are
/// equal as maps on polynomials iff their normal forms coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffOperator {
    nvars: usize,
    order: usize,
    terms: BTreeMap<Exponents, PolyFunction>,
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// All multi-indices `γ ≤ α` with the product of binomials `C(α, γ)`.
fn sub_indices(alpha: &[u32]) -> Vec<(Exponents, i64)> {
    let mut out: Vec<(Exponents, i64)> = vec![(Vec::with_capacity(alpha.len()), 1)];
    for &a in alpha {
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for (g, c) in &out {
            for k in 0..=a {
                let mut ng = g.clone();
                ng.push(k);
                next.push((ng, c * binomial(a, k)));
            }
        }
        out = next;
    }
    out
}

impl DiffOperator {
    pub fn zero(nvars: usize, order: usize) -> Self {
        Self { nvars, order, terms: BTreeMap::new() }
    }

    pub fn identity(nvars: usize, order: usize) -> Self {
        Self::multiplication(&PolyFunction::one(nvars, order))
    }

    /// Multiplication by a polynomial.
    pub fn multiplication(p: &PolyFunction) -> Self {
        let mut d = Self::zero(p.nvars(), p.order());
        d.add_term(vec![0; p.nvars()], p.clone());
        d
    }

    /// `∂/∂x^i`.
    pub fn partial(nvars: usize, order: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut d = Self::zero(nvars, order);
        d.add_term(e, PolyFunction::one(nvars, order));
        d
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, PolyFunction> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c ∂^α`, pruning zeros.
    /// The lowest power of `ℏ` in any coefficient, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(PolyFunction::valuation).min()
    }

    pub fn add_term(&mut self, alpha: Exponents, c: PolyFunction) {
        debug_assert_eq!(alpha.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
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

    fn check(&self, o: &Self) {
        assert_eq!(self.nvars, o.nvars, "coordinate counts differ");
        assert_eq!(self.order, o.order, "truncation orders differ");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        self.check(o);
        for (a, c) in &o.terms {
            self.add_term(a.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(PolyFunction::neg)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn scale_series(&self, s: &HbarPoly) -> Self {
        self.map_coeffs(|c| c.scale_series(s))
    }

    /// `p · D`: multiplies every coefficient by `p` from the left.
    pub fn left_mul(&self, p: &PolyFunction) -> Self {
        self.map_coeffs(|c| p.mul(c))
    }

    fn map_coeffs(&self, f: impl Fn(&PolyFunction) -> PolyFunction) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (a.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { nvars: self.nvars, order: self.order, terms }
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, p: &PolyFunction) -> PolyFunction {
        assert_eq!(self.nvars, p.nvars(), "coordinate counts differ");
        let mut out = PolyFunction::zero(self.nvars, self.order);
        for (alpha, c) in &self.terms {
            let d = p.derivative_multi(alpha);
            if !d.is_zero() {
                out.add_assign(&c.mul(&d));
            }
        }
        out
    }

    /// The composite `self ∘ o`, normal-ordered by the Leibniz rule
    /// `∂^α ∘ d = Σ_{γ≤α} C(α,γ) (∂^γ d) ∂^{α−γ}`.
    pub fn compose(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = Self::zero(self.nvars, self.order);
        // Pairs whose ℏ-valuations already exceed the order cannot contribute,
        // and derivatives of `o`'s coefficients are shared across `alpha`.
        let rhs: Vec<_> = o.terms.iter().map(|(b, d)| (b, d, d.valuation().unwrap_or(usize::MAX))).collect();
        let mut derivs: BTreeMap<(usize, Exponents), PolyFunction> = BTreeMap::new();
        for (alpha, c) in &self.terms {
            let vc = c.valuation().unwrap_or(usize::MAX);
            if vc > self.order {
                continue;
            }
            let subs = sub_indices(alpha);
            for (j, &(beta, d, vd)) in rhs.iter().enumerate() {
                if vc + vd > self.order {
                    continue;
                }
                for (gamma, binom) in &subs {
                    let dd = derivs.entry((j, gamma.clone())).or_insert_with(|| d.derivative_multi(gamma));
                    if dd.is_zero() {
                        continue;
                    }
                    let coeff = c.mul(dd);
                    if coeff.is_zero() {
                        continue;
                    }
                    let idx: Exponents = alpha
                        .iter()
                        .zip(gamma)
                        .zip(beta)
                        .map(|((a, g), b)| a - g + b)
                        .collect();
                    let coeff = if *binom == 1 { coeff } else { coeff.scale(&GaussianRational::from_int(*binom)) };
                    out.add_term(idx, coeff);
                }
            }
        }
        out
    }

    /// Places the operator on the variable block starting at `offset` of a
    /// `total`-variable space.
    pub fn embed_block(&self, total: usize, offset: usize) -> Self {
        let mut out = Self::zero(total, self.order);
        for (a, c) in &self.terms {
            let mut na = vec![0; total];
            na[offset..offset + self.nvars].copy_from_slice(a);
            out.add_term(na, c.embed_block(total, offset));
        }
        out
    }

    /// Tensor product `self ⊗ o` acting on disjoint variable blocks
    /// (`self` on the first block).
    pub fn tensor(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order, "truncation orders differ");
        let total = self.nvars + o.nvars;
        // Operators on disjoint blocks commute, so `(c∂^α)⊗(d∂^β) = (c⊗d)∂^{(α,β)}`.
        let mut out = Self::zero(total, self.order);
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_term(idx, c.tensor(d));
            }
        }
        out
    }

    /// For an operator on `copies` blocks of variables, the operator
    /// `u ↦ (D(u ⊗ 1 ⊗ … ⊗ 1))|_{diagonal}` on the first block: terms
    /// differentiating other blocks are dropped and the remaining coefficients
    /// are pulled back along the diagonal.
    pub fn restrict_to_diagonal(&self, copies: usize) -> Self {
        let d = self.nvars / copies;
        let mut out = Self::zero(d, self.order);
        for (a, c) in &self.terms {
            if a[d..].iter().any(|&k| k > 0) {
                continue;
            }
            out.add_term(a[..d].to_vec(), c.diagonal(copies));
        }
        out
    }

    /// Highest derivative order occurring.
    pub fn differential_order(&self) -> u32 {
        self.terms.keys().map(|a| a.iter().sum()).max().unwrap_or(0)
    }

    /// Renders the first term (in multi-index order) as a residual witness.
    pub fn first_term(&self, names: &[String]) -> Option<String> {
        self.terms.iter().next().map(|(a, c)| {
            let coeff = c.first_term(names).unwrap_or_default();
            let mut d = Vec::new();
            for (i, &k) in a.iter().enumerate() {
                match k {
                    0 => {}
                    1 => d.push(format!("d/d{}", names[i])),
                    _ => d.push(format!("(d/d{})^{k}", names[i])),
                }
            }
            if d.is_empty() {
                coeff
            } else {
                format!("{coeff} {}", d.join(" "))
            }
        })
    }
}
