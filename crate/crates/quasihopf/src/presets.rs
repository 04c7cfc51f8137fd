//! Built-in example algebras with their twists and derivation representations.
//!
//! * `classical(d)`: the Abelian enveloping algebra on `t1..td`, untwisted,
//!   acting on polynomials in `x1..xd` by `t_i ↦ ∂_{x_i}`.
//! * `moyal(Θ)`: the same algebra (even `d`) with the Abelian twist
//!   `F = exp(−(iℏ/2) Θ^{ij} t_i⊗t_j)`.
//! * `rflux(R)`: the nilpotent algebra on translations `t_i`, rotations `m_ij`
//!   (`i<j`) and dual translations `tt_i`, ordered `t < m < tt`, with
//!   `[tt_i, m_jk] = δ_ij t_k − δ_ik t_j`, twisted by
//!   `F = exp(−(iℏ/2)((1/4)R^{ijk}(m_ij⊗t_k − t_i⊗m_jk) + t_i⊗tt_i − tt_i⊗t_i))`
//!   and acting on phase space `x1..xn, p1..pn` by `t_i ↦ ∂_{x_i}`,
//!   `tt_i ↦ ∂_{p_i}`, `m_ij ↦ p_i ∂_{x_j} − p_j ∂_{x_i}`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use qtwist_core::{Gen, GaussianRational, HbarPoly, LiePresentation, TensorElement};

use crate::data::QuasiHopfData;
use crate::error::HopfError;
use crate::twist::{apply_twist, CochainTwist};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresetName {
    Classical,
    Moyal,
    Rflux,
}

impl PresetName {
    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::Classical => "classical",
            PresetName::Moyal => "moyal",
            PresetName::Rflux => "rflux",
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetName {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self, HopfError> {
        match s {
            "classical" => Ok(PresetName::Classical),
            "moyal" => Ok(PresetName::Moyal),
            "rflux" => Ok(PresetName::Rflux),
            other => Err(HopfError::UnknownPreset(other.to_string())),
        }
    }
}

/// Numerical parameters of a preset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresetParams {
    Classical { dim: usize },
    /// Skew-symmetric `d×d` matrix with `d` even.
    Moyal { theta: Vec<Vec<GaussianRational>> },
    /// Totally antisymmetric `n×n×n` tensor.
    Rflux { r: Vec<Vec<Vec<GaussianRational>>> },
}

impl PresetParams {
    /// Defaults: `classical(2)`, `moyal` with `Θ^{12} = 1`, `rflux(3)` with
    /// `R^{123} = 1`.
    pub fn default_for(name: PresetName) -> Self {
        match name {
            PresetName::Classical => PresetParams::Classical { dim: 2 },
            PresetName::Moyal => PresetParams::Moyal { theta: standard_theta(2) },
            PresetName::Rflux => PresetParams::Rflux { r: levi_civita(3) },
        }
    }

    pub fn name(&self) -> PresetName {
        match self {
            PresetParams::Classical { .. } => PresetName::Classical,
            PresetParams::Moyal { .. } => PresetName::Moyal,
            PresetParams::Rflux { .. } => PresetName::Rflux,
        }
    }
}

/// The symplectic matrix with `Θ^{2k-1,2k} = 1 = −Θ^{2k,2k-1}`.
pub fn standard_theta(d: usize) -> Vec<Vec<GaussianRational>> {
    let mut t = vec![vec![GaussianRational::zero(); d]; d];
    for k in (0..d.saturating_sub(1)).step_by(2) {
        t[k][k + 1] = GaussianRational::one();
        t[k + 1][k] = GaussianRational::from_int(-1);
    }
    t
}

/// The totally antisymmetric tensor with `R^{123} = 1` (zero for `n < 3`).
pub fn levi_civita(n: usize) -> Vec<Vec<Vec<GaussianRational>>> {
    let mut r = vec![vec![vec![GaussianRational::zero(); n]; n]; n];
    if n >= 3 {
        for (p, s) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)] {
            r[p[0]][p[1]][p[2]] = GaussianRational::from_int(s);
        }
    }
    r
}

/// One summand `coefficient(x) ∂_{coordinate}` of a first-order operator; the
/// coefficient is a polynomial given by exponent vectors and scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTerm {
    pub coefficient: Vec<(Vec<u32>, GaussianRational)>,
    pub coordinate: usize,
}

/// Coordinates of the carrier space and the derivation assigned to each
/// generator (indexed like the Lie presentation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepDescriptor {
    pub coordinates: Vec<String>,
    pub images: Vec<Vec<DerivationTerm>>,
}

/// A preset: the untwisted algebra, its twist and its representation.
#[derive(Clone, Debug)]
pub struct Preset {
    pub name: PresetName,
    pub params: PresetParams,
    pub base: QuasiHopfData,
    pub twist: CochainTwist,
    pub rep: RepDescriptor,
}

impl Preset {
    /// The twisted algebra `H_F`.
    pub fn twisted(&self) -> Result<QuasiHopfData, HopfError> {
        apply_twist(&self.base, &self.twist)
    }
}

fn coordinate_partial(nvars: usize, coord: usize) -> DerivationTerm {
    DerivationTerm { coefficient: vec![(vec![0; nvars], GaussianRational::one())], coordinate: coord }
}

/// Builds a preset at truncation order `order ≥ 1`.
pub fn preset(params: &PresetParams, order: usize) -> Result<Preset, HopfError> {
    if order == 0 {
        return Err(HopfError::InvalidParams("truncation order must be at least 1".into()));
    }
    match params {
        PresetParams::Classical { dim } => classical(*dim, order, params),
        PresetParams::Moyal { theta } => moyal(theta, order, params),
        PresetParams::Rflux { r } => rflux(r, order, params),
    }
}

fn abelian_translations(dim: usize) -> Result<Arc<LiePresentation>, HopfError> {
    let names = (1..=dim).map(|i| format!("t{i}")).collect();
    Ok(Arc::new(LiePresentation::abelian(names)?))
}

fn translation_rep(dim: usize) -> RepDescriptor {
    RepDescriptor {
        coordinates: (1..=dim).map(|i| format!("x{i}")).collect(),
        images: (0..dim).map(|i| vec![coordinate_partial(dim, i)]).collect(),
    }
}

fn classical(dim: usize, order: usize, params: &PresetParams) -> Result<Preset, HopfError> {
    if dim == 0 {
        return Err(HopfError::InvalidParams("dimension must be positive".into()));
    }
    let base = QuasiHopfData::universal_enveloping(abelian_translations(dim)?, order);
    Ok(Preset {
        name: PresetName::Classical,
        params: params.clone(),
        twist: CochainTwist::trivial(&base),
        base,
        rep: translation_rep(dim),
    })
}

/// `−(iℏ/2)` as a series.
fn minus_i_hbar_half(order: usize) -> HbarPoly {
    HbarPoly::monomial(1, GaussianRational::imag_ratio(-1, 2), order)
}

fn moyal(theta: &[Vec<GaussianRational>], order: usize, params: &PresetParams) -> Result<Preset, HopfError> {
    let d = theta.len();
    if d == 0 || d % 2 != 0 {
        return Err(HopfError::InvalidParams(format!("moyal needs an even positive dimension, got {d}")));
    }
    for (i, row) in theta.iter().enumerate() {
        if row.len() != d {
            return Err(HopfError::InvalidParams("theta must be a square matrix".into()));
        }
        for j in 0..d {
            if theta[i][j] != -theta[j][i].clone() {
                return Err(HopfError::InvalidParams(format!(
                    "theta is not skew-symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let lie = abelian_translations(d)?;
    let base = QuasiHopfData::universal_enveloping(lie.clone(), order);
    let mut exponent = TensorElement::zero(lie.clone(), 2, order);
    for i in 0..d {
        for j in 0..d {
            if theta[i][j].is_zero() {
                continue;
            }
            let term = base.generator(i as Gen).tensor(&base.generator(j as Gen));
            exponent = exponent.add(&term.scale(&theta[i][j]));
        }
    }
    let f = exponent.scale_series(&minus_i_hbar_half(order)).exp_truncated()?;
    Ok(Preset {
        name: PresetName::Moyal,
        params: params.clone(),
        twist: CochainTwist::new(&base, f)?,
        base,
        rep: translation_rep(d),
    })
}

/// Generator layout of the flux algebra in dimension `n`.
#[derive(Clone, Copy, Debug)]
pub struct FluxLayout {
    pub n: usize,
}

impl FluxLayout {
    pub fn t(&self, i: usize) -> Gen {
        i as Gen
    }

    /// Index of `m_ij` for `i < j` (0-based).
    pub fn m(&self, i: usize, j: usize) -> Gen {
        debug_assert!(i < j && j < self.n);
        let before: usize = (0..i).map(|a| self.n - 1 - a).sum();
        (self.n + before + (j - i - 1)) as Gen
    }

    pub fn tt(&self, i: usize) -> Gen {
        (self.n + self.n * (self.n - 1) / 2 + i) as Gen
    }

    pub fn len(&self) -> usize {
        2 * self.n + self.n * (self.n - 1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `m_ij` as a signed generator: `m_ji = −m_ij`, `m_ii = 0`.
    pub fn m_signed(&self, i: usize, j: usize) -> Option<(Gen, i64)> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Some((self.m(i, j), 1)),
            std::cmp::Ordering::Greater => Some((self.m(j, i), -1)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn presentation(&self) -> Result<LiePresentation, HopfError> {
        let n = self.n;
        let mut names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        for i in 0..n {
            for j in i + 1..n {
                names.push(format!("m{}{}", i + 1, j + 1));
            }
        }
        names.extend((1..=n).map(|i| format!("tt{i}")));
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    let mut rhs = Vec::new();
                    if i == j {
                        rhs.push((self.t(k) as usize, GaussianRational::one()));
                    }
                    if i == k {
                        rhs.push((self.t(j) as usize, GaussianRational::from_int(-1)));
                    }
                    if !rhs.is_empty() {
                        brackets.push((self.tt(i) as usize, self.m(j, k) as usize, rhs));
                    }
                }
            }
        }
        Ok(LiePresentation::new(names, brackets)?)
    }
}

fn rflux(r: &[Vec<Vec<GaussianRational>>], order: usize, params: &PresetParams) -> Result<Preset, HopfError> {
    let n = r.len();
    if n == 0 || n > 9 {
        return Err(HopfError::InvalidParams(format!("rflux dimension must be in 1..=9, got {n}")));
    }
    for i in 0..n {
        if r[i].len() != n || r[i].iter().any(|row| row.len() != n) {
            return Err(HopfError::InvalidParams("R must be an n×n×n tensor".into()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = &r[i][j][k];
                if *v != -r[j][i][k].clone() || *v != -r[i][k][j].clone() {
                    return Err(HopfError::InvalidParams(format!(
                        "R is not totally antisymmetric at ({}, {}, {})",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    let layout = FluxLayout { n };
    let lie = Arc::new(layout.presentation()?);
    let base = QuasiHopfData::universal_enveloping(lie.clone(), order);
    let g = |x: Gen| base.generator(x);
    let quarter = GaussianRational::ratio(1, 4);
    let mut exponent = TensorElement::zero(lie.clone(), 2, order);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if r[i][j][k].is_zero() {
                    continue;
                }
                let c = &r[i][j][k] * &quarter;
                if let Some((m, s)) = layout.m_signed(i, j) {
                    let term = g(m).tensor(&g(layout.t(k)));
                    exponent = exponent.add(&term.scale(&(&c * &GaussianRational::from_int(s))));
                }
                if let Some((m, s)) = layout.m_signed(j, k) {
                    let term = g(layout.t(i)).tensor(&g(m));
                    exponent = exponent.sub(&term.scale(&(&c * &GaussianRational::from_int(s))));
                }
            }
        }
    }
    for i in 0..n {
        exponent = exponent
            .add(&g(layout.t(i)).tensor(&g(layout.tt(i))))
            .sub(&g(layout.tt(i)).tensor(&g(layout.t(i))));
    }
    let f = exponent.scale_series(&minus_i_hbar_half(order)).exp_truncated()?;

    let nv = 2 * n;
    let x = |i: usize| i;
    let p = |i: usize| n + i;
    let mut images = vec![Vec::new(); layout.len()];
    for i in 0..n {
        images[layout.t(i) as usize] = vec![coordinate_partial(nv, x(i))];
        images[layout.tt(i) as usize] = vec![coordinate_partial(nv, p(i))];
        for j in i + 1..n {
            let linear = |c: usize, s: i64| {
                let mut e = vec![0; nv];
                e[c] = 1;
                vec![(e, GaussianRational::from_int(s))]
            };
            images[layout.m(i, j) as usize] = vec![
                DerivationTerm { coefficient: linear(p(i), 1), coordinate: x(j) },
                DerivationTerm { coefficient: linear(p(j), -1), coordinate: x(i) },
            ];
        }
    }
    let mut coordinates: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    coordinates.extend((1..=n).map(|i| format!("p{i}")));
    Ok(Preset {
        name: PresetName::Rflux,
        params: params.clone(),
        twist: CochainTwist::new(&base, f)?,
        base,
        rep: RepDescriptor { coordinates, images },
    })
}
