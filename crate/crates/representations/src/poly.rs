//! Polynomials in `d` coordinates with truncated ℏ-series coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use qtwist_core::{GaussianRational, HbarPoly};

/// Exponent vector of a coordinate monomial.
pub type Exponents = Vec<u32>;

/// A polynomial `Σ c_e x^e` with `c_e ∈ ℚ(i)[ℏ]/(ℏ^{N+1})`. No stored
/// coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyFunction {
    nvars: usize,
    order: usize,
    terms: BTreeMap<Exponents, HbarPoly>,
}

impl PolyFunction {
    pub fn zero(nvars: usize, order: usize) -> Self {
        Self { nvars, order, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, order: usize) -> Self {
        Self::constant(nvars, HbarPoly::one(order))
    }

    pub fn constant(nvars: usize, c: HbarPoly) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn scalar(nvars: usize, order: usize, c: GaussianRational) -> Self {
        Self::constant(nvars, HbarPoly::constant(c, order))
    }

    pub fn monomial(exps: Exponents, c: HbarPoly) -> Self {
        let mut p = Self::zero(exps.len(), c.order());
        p.add_term(exps, c);
        p
    }

    /// The coordinate function `x^i` (0-based).
    pub fn coordinate(nvars: usize, order: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, HbarPoly::one(order))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, HbarPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exps: Exponents, c: HbarPoly) {
        debug_assert_eq!(exps.len(), self.nvars);
        debug_assert_eq!(c.order(), self.order);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        self.check(o);
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(HbarPoly::neg)
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
            .map(|(e, c)| (e.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { nvars: self.nvars, order: self.order, terms }
    }

    /// The lowest power of `ℏ` present, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(HbarPoly::valuation).min()
    }

    /// Pointwise (commutative) product.
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = Self::zero(self.nvars, self.order);
        if self.is_zero() || o.is_zero() {
            return out;
        }
        let rhs: Vec<_> = o.terms.iter().map(|(e, c)| (e, c, c.valuation().unwrap())).collect();
        for (e1, c1) in &self.terms {
            let v1 = c1.valuation().unwrap();
            for &(e2, c2, v2) in &rhs {
                if v1 + v2 > self.order {
                    continue;
                }
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }

    /// Product of functions on disjoint variable blocks: `(f ⊗ g)(x, y) = f(x)g(y)`.
    pub fn tensor(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order, "truncation orders differ");
        let mut out = Self::zero(self.nvars + o.nvars, self.order);
        for (e1, c1) in &self.terms {
            let v1 = c1.valuation().unwrap();
            for (e2, c2) in &o.terms {
                if v1 + c2.valuation().unwrap() > self.order {
                    continue;
                }
                let mut e = e1.clone();
                e.extend_from_slice(e2);
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.order);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂x^i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c.scale(&GaussianRational::from_int(e[i] as i64)));
        }
        out
    }

    /// `∂^α` for a multi-index `α`.
    pub fn derivative_multi(&self, alpha: &[u32]) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        'terms: for (e, c) in &self.terms {
            let mut factor: i64 = 1;
            let mut ne = e.clone();
            for (k, &a) in alpha.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if e[k] < a {
                    continue 'terms;
                }
                for s in 0..a {
                    factor *= (e[k] - s) as i64;
                }
                ne[k] -= a;
            }
            out.add_term(ne, c.scale(&GaussianRational::from_int(factor)));
        }
        out
    }

    /// Places the variables in the block starting at `offset` of a
    /// `total`-variable space.
    pub fn embed_block(&self, total: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= total, "block out of range");
        let mut out = Self::zero(total, self.order);
        for (e, c) in &self.terms {
            let mut ne = vec![0; total];
            ne[offset..offset + self.nvars].copy_from_slice(e);
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Identifies `copies` consecutive blocks of `nvars / copies` variables
    /// with each other (pull-back along the diagonal `x ↦ (x, …, x)`).
    pub fn diagonal(&self, copies: usize) -> Self {
        assert!(copies > 0 && self.nvars % copies == 0, "variables do not split into blocks");
        let d = self.nvars / copies;
        let mut out = Self::zero(d, self.order);
        for (e, c) in &self.terms {
            let mut ne = vec![0; d];
            for (k, &x) in e.iter().enumerate() {
                ne[k % d] += x;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// The part of every coefficient at `ℏ^k`, as a polynomial of the same
    /// truncation order with coefficients in degree 0.
    pub fn hbar_coefficient(&self, k: usize) -> Self {
        self.map_coeffs(|c| HbarPoly::constant(c.coeff(k).clone(), c.order()))
    }

    /// Re-truncates every coefficient to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut out = Self::zero(self.nvars, order);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.with_order(order));
        }
        out
    }

    /// Renders as an expression accepted by the polynomial parser, e.g.
    /// `3/2*x1^2*x2 + (1+i)*hbar*x3 - 1`; the zero polynomial is `0`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Highest total degree first reads naturally; ties by exponent order.
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut first = true;
        for e in keys {
            let c = &self.terms[e];
            let mono = render_monomial(e, names);
            for (k, ck) in c.coeffs().iter().enumerate() {
                if ck.is_zero() {
                    continue;
                }
                let mut factors = Vec::new();
                let zero = qtwist_core::BigRational::from_integer(0.into());
                let negative = ck.re < zero || (ck.re == zero && ck.im < zero);
                let mag = if negative { -ck } else { ck.clone() };
                let pure_one = mag.is_one();
                if !pure_one {
                    factors.push(mag.to_string());
                }
                match k {
                    0 => {}
                    1 => factors.push("hbar".into()),
                    _ => factors.push(format!("hbar^{k}")),
                }
                if !mono.is_empty() {
                    factors.push(mono.clone());
                }
                if factors.is_empty() {
                    factors.push("1".into());
                }
                let body = factors.join("*");
                match (first, negative) {
                    (true, false) => out.push_str(&body),
                    (true, true) => {
                        out.push('-');
                        out.push_str(&body);
                    }
                    (false, false) => {
                        let _ = write!(out, " + {body}");
                    }
                    (false, true) => {
                        let _ = write!(out, " - {body}");
                    }
                }
                first = false;
            }
        }
        out
    }

    /// Renders the first term (in exponent order), used as residual witness.
    pub fn first_term(&self, names: &[String]) -> Option<String> {
        self.terms.iter().next().map(|(e, c)| {
            let m = render_monomial(e, names);
            if m.is_empty() {
                format!("({c})")
            } else {
                format!("({c}) {m}")
            }
        })
    }
}

fn render_monomial(e: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{k}", names[i])),
        }
    }
    parts.join("*")
}

/// Default coordinate names `x1..xd`.
pub fn default_names(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("x{i}")).collect()
}

/// All monomials `x^e` with total degree at most `max_degree` in the listed
/// coordinates, ordered by degree, then exponent vector.
pub fn monomials_up_to(nvars: usize, order: usize, coords: &[usize], max_degree: u32) -> Vec<PolyFunction> {
    let mut exps: Vec<Exponents> = vec![vec![0; nvars]];
    let mut layer = exps.clone();
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for e in &layer {
            let last = coords.iter().rposition(|&c| e[c] > 0).unwrap_or(0);
            for &c in &coords[last..] {
                let mut ne = e.clone();
                ne[c] += 1;
                next.push(ne);
            }
        }
        exps.extend(next.iter().cloned());
        layer = next;
    }
    exps.into_iter().map(|e| PolyFunction::monomial(e, HbarPoly::one(order))).collect()
}

/// All ordered triples of monomials in the listed coordinates whose degrees
/// sum to at most `max_total_degree`.
pub fn monomial_triples(
    nvars: usize,
    order: usize,
    coords: &[usize],
    max_total_degree: u32,
) -> Vec<(PolyFunction, PolyFunction, PolyFunction)> {
    let monos: Vec<(u32, PolyFunction)> = monomials_up_to(nvars, order, coords, max_total_degree)
        .into_iter()
        .map(|m| (m.degree().unwrap_or(0), m))
        .collect();
    let mut out = Vec::new();
    for (da, a) in &monos {
        for (db, b) in monos.iter().filter(|(db, _)| da + db <= max_total_degree) {
            for (_, c) in monos.iter().filter(|(dc, _)| da + db + dc <= max_total_degree) {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_by_total_degree() {
        // Monomials per degree in 2 variables: 1, 2, 3, 4.
        let t = monomial_triples(2, 1, &[0, 1], 2);
        let expected = 1 + 3 * 2 + (3 * 3 + 3 * 2 * 2);
        assert_eq!(t.len(), expected);
        assert!(t.iter().all(|(a, b, c)| a.degree().unwrap() + b.degree().unwrap() + c.degree().unwrap() <= 2));
    }

    #[test]
    fn derivative_and_product() {
        let x = PolyFunction::coordinate(2, 1, 0);
        let y = PolyFunction::coordinate(2, 1, 1);
        let p = x.mul(&x).mul(&y);
        assert_eq!(p.derivative(0), x.mul(&y).scale(&GaussianRational::from_int(2)));
        assert_eq!(p.derivative_multi(&[2, 1]), PolyFunction::scalar(2, 1, GaussianRational::from_int(2)));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_up_to(2, 1, &[0, 1], 3).len(), 10);
        assert_eq!(monomials_up_to(3, 1, &[0, 2], 2).len(), 6);
    }

    #[test]
    fn rendering() {
        let names = default_names(2);
        let x = PolyFunction::coordinate(2, 1, 0);
        let p = x.mul(&x).sub(&PolyFunction::one(2, 1)).add(&x.scale_series(&HbarPoly::monomial(
            1,
            GaussianRational::imag_ratio(1, 2),
            1,
        )));
        assert_eq!(p.render(&names), "x1^2 + 1/2*i*hbar*x1 - 1");
    }
}
