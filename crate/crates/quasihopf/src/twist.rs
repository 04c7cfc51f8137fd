//! Cochain twists and gauge transformations of the quasi-antipode.

use qtwist_core::{Gen, Slot, TensorElement};

use crate::data::{invert_element, QuasiHopfData, QuasiHopfParts};
use crate::error::HopfError;

/// An invertible, counital element `F ∈ H⊗H` together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainTwist {
    f: TensorElement,
    f_inv: TensorElement,
}

impl CochainTwist {
    /// Validates invertibility and counitality `(ε⊗id)(F) = 1 = (id⊗ε)(F)`
    /// with respect to the counit of `base`.
    pub fn new(base: &QuasiHopfData, f: TensorElement) -> Result<Self, HopfError> {
        if f.legs() != 2 {
            return Err(HopfError::Shape { what: "twist legs", got: f.legs(), expected: 2 });
        }
        let f_inv = invert_element(&f).map_err(|_| HopfError::NotInvertible("twist"))?;
        let unit = base.unit(1);
        for leg in [0, 1] {
            let c = base.counit_on_leg(&f, leg);
            if let Some(t) = c.sub(&unit).first_term() {
                return Err(HopfError::NotCounital(t));
            }
        }
        Ok(Self { f, f_inv })
    }

    /// The trivial twist `1⊗1`.
    pub fn trivial(base: &QuasiHopfData) -> Self {
        let one = base.unit(2);
        Self { f: one.clone(), f_inv: one }
    }

    pub fn f(&self) -> &TensorElement {
        &self.f
    }

    pub fn f_inv(&self) -> &TensorElement {
        &self.f_inv
    }

    /// `F⁻¹`, which is a cochain twist based on the twisted algebra.
    pub fn inverse(&self) -> Self {
        Self { f: self.f_inv.clone(), f_inv: self.f.clone() }
    }

    /// The product twist `G·F` (apply `F` first, then `G`).
    pub fn compose_after(&self, g: &CochainTwist) -> Self {
        Self { f: g.f.mul(&self.f), f_inv: self.f_inv.mul(&g.f_inv) }
    }
}

/// Twisted quasi-Hopf algebra `H_F`: conjugated coproduct, twisted associator,
/// twisted `α`, `β` and R-matrix; counit and antipode are unchanged.
pub fn apply_twist(h: &QuasiHopfData, twist: &CochainTwist) -> Result<QuasiHopfData, HopfError> {
    let (f, f_inv) = (twist.f(), twist.f_inv());
    let p = h.parts();
    let delta_gen = (0..h.lie().len() as Gen)
        .map(|g| f.mul(&h.coproduct(&h.generator(g))).mul(f_inv))
        .collect();
    let phi = f
        .embed(&[2, 3], 3)
        .mul(&h.coproduct_on_leg(f, 1))
        .mul(h.phi())
        .mul(&h.coproduct_on_leg(f_inv, 0))
        .mul(&f_inv.embed(&[1, 2], 3));
    let alpha = h
        .antipode_on_leg(f_inv, 0)
        .contract(&[vec![Slot::Leg(0), Slot::Elem(h.alpha()), Slot::Leg(1)]]);
    let beta = h
        .antipode_on_leg(f, 1)
        .contract(&[vec![Slot::Leg(0), Slot::Elem(h.beta()), Slot::Leg(1)]]);
    let r_matrix = p.r_matrix.as_ref().map(|r| f.flip().mul(r).mul(f_inv));
    QuasiHopfData::from_parts(QuasiHopfParts {
        lie: p.lie.clone(),
        order: p.order,
        delta_gen,
        epsilon_gen: p.epsilon_gen.clone(),
        antipode_gen: p.antipode_gen.clone(),
        alpha,
        beta,
        phi,
        r_matrix,
    })
}

/// Gauge transformation `S' = u S(·) u⁻¹`, `α' = uα`, `β' = βu⁻¹`.
pub fn gauge_transform_antipode(
    h: &QuasiHopfData,
    u: &TensorElement,
) -> Result<QuasiHopfData, HopfError> {
    if u.legs() != 1 {
        return Err(HopfError::Shape { what: "gauge element legs", got: u.legs(), expected: 1 });
    }
    let u_inv = invert_element(u).map_err(|_| HopfError::NotInvertible("gauge element"))?;
    let mut p = h.parts().clone();
    p.antipode_gen = p.antipode_gen.iter().map(|s| u.mul(s).mul(&u_inv)).collect();
    p.alpha = u.mul(&p.alpha);
    p.beta = p.beta.mul(&u_inv);
    QuasiHopfData::from_parts(p)
}
