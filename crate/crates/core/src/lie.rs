//! Lie algebra presentations and PBW normal ordering in the enveloping algebra.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::CoreError;
use crate::scalar::GaussianRational;

/// Index of a generator in its presentation's total order.
pub type Gen = u16;

/// A PBW basis monomial: a nondecreasing sequence of generator indices.
/// The empty sequence is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PbwMonomial(Vec<Gen>);

impl PbwMonomial {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn generator(g: Gen) -> Self {
        Self(vec![g])
    }

    /// Sorts the factors. Only meaningful when they pairwise commute, or as a
    /// key for an already normal-ordered word.
    pub fn from_sorted(mut factors: Vec<Gen>) -> Self {
        factors.sort_unstable();
        Self(factors)
    }

    pub fn factors(&self) -> &[Gen] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }
}

/// A linear combination of PBW monomials with scalar coefficients.
pub type Combination = Vec<(PbwMonomial, GaussianRational)>;

/// A finite-dimensional Lie algebra given by named generators in a fixed total
/// order and the structure constants of their brackets.
///
/// Every generator occurring in `[g_i, g_j]` must strictly precede both `g_i`
/// and `g_j`; this makes PBW rewriting terminate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePresentation {
    names: Vec<String>,
    /// `table[i][j]` is `[g_i, g_j]`, stored for all ordered pairs.
    table: Vec<Vec<Vec<(Gen, GaussianRational)>>>,
}

impl LiePresentation {
    /// Builds a presentation from generator names (in order) and brackets
    /// `(i, j, [g_i, g_j])`. Pairs may be given in either orientation; the
    /// opposite orientation is filled in by antisymmetry.
    pub fn new<I>(names: Vec<String>, brackets: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = (usize, usize, Vec<(usize, GaussianRational)>)>,
    {
        for (k, n) in names.iter().enumerate() {
            if names[..k].contains(n) {
                return Err(CoreError::DuplicateGenerator(n.clone()));
            }
        }
        let d = names.len();
        let mut acc: Vec<Vec<BTreeMap<Gen, GaussianRational>>> = vec![vec![BTreeMap::new(); d]; d];
        for (i, j, rhs) in brackets {
            for &idx in [i, j].iter().chain(rhs.iter().map(|(k, _)| k)) {
                if idx >= d {
                    return Err(CoreError::UnknownGenerator(format!("#{idx}")));
                }
            }
            for (k, c) in rhs {
                if k >= i.min(j) {
                    return Err(CoreError::Inadmissible {
                        a: names[i].clone(),
                        b: names[j].clone(),
                        offender: names[k].clone(),
                    });
                }
                *acc[i][j].entry(k as Gen).or_default() += &c;
                *acc[j][i].entry(k as Gen).or_default() -= &c;
            }
        }
        let table = acc
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|m| m.into_iter().filter(|(_, c)| !c.is_zero()).collect())
                    .collect()
            })
            .collect();
        Ok(Self { names, table })
    }

    /// An Abelian Lie algebra on the given generators.
    pub fn abelian(names: Vec<String>) -> Result<Self, CoreError> {
        Self::new(names, std::iter::empty())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }

    pub fn index_of(&self, name: &str) -> Result<Gen, CoreError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|p| p as Gen)
            .ok_or_else(|| CoreError::UnknownGenerator(name.to_string()))
    }

    /// Structure constants of `[g_i, g_j]`.
    pub fn bracket(&self, i: Gen, j: Gen) -> &[(Gen, GaussianRational)] {
        &self.table[i as usize][j as usize]
    }

    pub fn commutes(&self, i: Gen, j: Gen) -> bool {
        self.table[i as usize][j as usize].is_empty()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(Vec::is_empty))
    }

    /// Bracket of two generator combinations, extended bilinearly.
    pub fn bracket_linear(
        &self,
        x: &BTreeMap<Gen, GaussianRational>,
        y: &BTreeMap<Gen, GaussianRational>,
    ) -> BTreeMap<Gen, GaussianRational> {
        let mut out: BTreeMap<Gen, GaussianRational> = BTreeMap::new();
        for (&a, ca) in x {
            for (&b, cb) in y {
                let cab = ca * cb;
                for (k, c) in self.bracket(a, b) {
                    *out.entry(*k).or_default() += &(&cab * c);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Returns the first triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(Gen, Gen, Gen)> {
        let d = self.len() as Gen;
        let single = |g: Gen| BTreeMap::from([(g, GaussianRational::one())]);
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let mut total = BTreeMap::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let ab = self.bracket_linear(&single(a), &single(b));
                        for (g, v) in self.bracket_linear(&ab, &single(c)) {
                            *total.entry(g).or_insert_with(GaussianRational::zero) += &v;
                        }
                    }
                    if total.values().any(|v: &GaussianRational| !v.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Product of two PBW monomials, rewritten into the PBW basis.
    pub fn mul_monomials(&self, a: &PbwMonomial, b: &PbwMonomial) -> Combination {
        let (fa, fb) = (a.factors(), b.factors());
        if fb.is_empty() {
            return vec![(a.clone(), GaussianRational::one())];
        }
        if fa.is_empty() || fa.last() <= fb.first() {
            let mut v = fa.to_vec();
            v.extend_from_slice(fb);
            return vec![(PbwMonomial(v), GaussianRational::one())];
        }
        let mut current: BTreeMap<Vec<Gen>, GaussianRational> =
            BTreeMap::from([(fa.to_vec(), GaussianRational::one())]);
        for &g in fb {
            let mut next = BTreeMap::new();
            for (m, c) in &current {
                self.mul_gen(m, g, c, &mut next);
            }
            next.retain(|_, c: &mut GaussianRational| !c.is_zero());
            current = next;
        }
        current.into_iter().map(|(m, c)| (PbwMonomial(m), c)).collect()
    }

    /// Accumulates `coeff · (m · g)` in PBW form into `out`, where `m` is sorted.
    ///
    /// With `m = m'x` and `x > g`: `m'xg = (m'g)x + m'[x, g]`. Every monomial of
    /// `m'g` and of `m'[x,g]` only involves generators `≤ x`, so appending `x`
    /// keeps the first part sorted.
    fn mul_gen(
        &self,
        m: &[Gen],
        g: Gen,
        coeff: &GaussianRational,
        out: &mut BTreeMap<Vec<Gen>, GaussianRational>,
    ) {
        let p = m.partition_point(|&x| x <= g);
        if p == m.len() || m[p..].iter().all(|&x| self.commutes(x, g)) {
            let mut v = Vec::with_capacity(m.len() + 1);
            v.extend_from_slice(&m[..p]);
            v.push(g);
            v.extend_from_slice(&m[p..]);
            *out.entry(v).or_insert_with(GaussianRational::zero) += coeff;
            return;
        }
        let (head, x) = (&m[..m.len() - 1], m[m.len() - 1]);
        let mut part = BTreeMap::new();
        self.mul_gen(head, g, coeff, &mut part);
        for (mut v, c) in part {
            v.push(x);
            *out.entry(v).or_insert_with(GaussianRational::zero) += &c;
        }
        for (k, c) in self.bracket(x, g) {
            self.mul_gen(head, *k, &(coeff * c), out);
        }
    }

    /// Rewrites a word of generators into the PBW basis.
    pub fn normal_order_word(&self, word: &[Gen]) -> Combination {
        let mut current: BTreeMap<Vec<Gen>, GaussianRational> =
            BTreeMap::from([(Vec::new(), GaussianRational::one())]);
        for &g in word {
            let mut next = BTreeMap::new();
            for (m, c) in &current {
                self.mul_gen(m, g, c, &mut next);
            }
            next.retain(|_, c: &mut GaussianRational| !c.is_zero());
            current = next;
        }
        current.into_iter().map(|(m, c)| (PbwMonomial(m), c)).collect()
    }

    /// Renders a monomial with powers, e.g. `t1*t2^2`; the unit renders as `1`.
    pub fn render_monomial(&self, m: &PbwMonomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        let mut s = String::new();
        let f = m.factors();
        let mut i = 0;
        while i < f.len() {
            let mut j = i;
            while j < f.len() && f[j] == f[i] {
                j += 1;
            }
            if i > 0 {
                s.push('*');
            }
            s.push_str(self.name(f[i]));
            if j - i > 1 {
                let _ = write!(s, "^{}", j - i);
            }
            i = j;
        }
        s
    }
}
