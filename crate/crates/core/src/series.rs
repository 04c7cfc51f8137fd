//! Formal power series in ℏ truncated at a fixed order.

use std::fmt;

use crate::error::CoreError;
use crate::scalar::GaussianRational;

/// A polynomial `c_0 + c_1 ℏ + … + c_N ℏ^N` standing for a formal power series
/// modulo `ℏ^{N+1}`.
///
/// The coefficient vector always has exactly `N + 1` entries; arithmetic drops
/// every contribution of degree above `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HbarPoly {
    coeffs: Vec<GaussianRational>,
}

impl HbarPoly {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![GaussianRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(GaussianRational::one(), order)
    }

    pub fn constant(c: GaussianRational, order: usize) -> Self {
        Self::monomial(0, c, order)
    }

    /// `c·ℏ^k`, which is zero when `k > order`.
    pub fn monomial(k: usize, c: GaussianRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds a series from explicit coefficients; entries beyond `order` are
    /// dropped and missing ones are zero.
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>, order: usize) -> Self {
        coeffs.resize(order + 1, GaussianRational::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &GaussianRational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_zero)
    }

    /// Lowest `k` with `c_k ≠ 0`, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn add_assign(&mut self, o: &Self) {
        self.check(o);
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Truncated Cauchy product. Panics on mismatched orders; see
    /// [`series_mul`] for the checked form.
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        out
    }

    /// Multiplies by `ℏ^k`, discarding overflow.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n {
            if i + k <= n {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    /// Multiplicative inverse by order-by-order recursion.
    pub fn inv(&self) -> Result<Self, CoreError> {
        let c0inv = self.coeffs[0].inv().ok_or(CoreError::ZeroConstantTerm)?;
        let n = self.order();
        let mut b = vec![GaussianRational::zero(); n + 1];
        b[0] = c0inv.clone();
        for k in 1..=n {
            let mut acc = GaussianRational::zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &b[k - j]);
            }
            b[k] = -(&acc * &c0inv);
        }
        Ok(Self { coeffs: b })
    }

    /// Re-truncates (or zero-extends) to another order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.order(), o.order(), "truncation orders differ");
    }
}

/// Checked truncated product.
pub fn series_mul(a: &HbarPoly, b: &HbarPoly) -> Result<HbarPoly, CoreError> {
    if a.order() != b.order() {
        return Err(CoreError::OrderMismatch(a.order(), b.order()));
    }
    Ok(a.mul(b))
}

/// Checked series inverse.
pub fn series_inv(a: &HbarPoly) -> Result<HbarPoly, CoreError> {
    a.inv()
}

/// Formats as `c0 + c1*hbar + c2*hbar^2`, omitting zero terms; `0` when zero.
impl fmt::Display for HbarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "hbar")?,
                1 => write!(f, "{c}*hbar")?,
                _ if c.is_one() => write!(f, "hbar^{k}")?,
                _ => write!(f, "{c}*hbar^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
