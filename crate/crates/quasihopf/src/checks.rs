//! Exact verification of the quasi-bialgebra, quasi-antipode and R-matrix
//! axioms at the truncation order.

use qtwist_core::{Gen, HbarPoly, Slot, TensorElement};

use crate::data::QuasiHopfData;
use crate::error::HopfError;
use crate::report::{expect_equal, Report};

/// Controls the sample of elements on which the laws for `Δ`, `ε` and `S` are
/// evaluated: all generators plus their normal-ordered products up to
/// `word_length` factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub word_length: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { word_length: 2 }
    }
}

pub const ANCHOR_QUASIBIALGEBRA: &str = "quasi-bialgebra-axioms";
pub const ANCHOR_QUASIANTIPODE: &str = "quasi-antipode-axioms";
pub const ANCHOR_QUASITRIANGULAR: &str = "r-matrix-axioms";
pub const ANCHOR_TRIANGULAR: &str = "triangularity";

fn bracket_element(h: &QuasiHopfData, i: Gen, j: Gen) -> TensorElement {
    let mut out = TensorElement::zero(h.lie().clone(), 1, h.order());
    for (k, c) in h.lie().bracket(i, j) {
        out = out.add(&h.generator(*k).scale(c));
    }
    out
}

fn generator_pairs(h: &QuasiHopfData) -> impl Iterator<Item = (Gen, Gen)> {
    let d = h.lie().len() as Gen;
    (0..d).flat_map(move |i| (i + 1..d).map(move |j| (i, j)))
}

fn scalar(h: &QuasiHopfData, s: HbarPoly, legs: usize) -> TensorElement {
    TensorElement::scalar(h.lie().clone(), legs, s)
}

fn quasibialgebra(h: &QuasiHopfData, opts: CheckOptions) -> Result<(), String> {
    for (i, j) in generator_pairs(h) {
        let (di, dj) = (h.coproduct(&h.generator(i)), h.coproduct(&h.generator(j)));
        let b = bracket_element(h, i, j);
        expect_equal(
            &format!("coproduct bracket [{}, {}]", h.lie().name(i), h.lie().name(j)),
            &di.mul(&dj).sub(&dj.mul(&di)),
            &h.coproduct(&b),
        )?;
        let eb = h.counit(&b);
        if !eb.is_zero() {
            return Err(format!("counit of bracket: ({eb})"));
        }
    }
    for x in h.sample_monomials(opts.word_length) {
        let dx = h.coproduct(&x);
        expect_equal("left counit law", &h.counit_on_leg(&dx, 0), &x)?;
        expect_equal("right counit law", &h.counit_on_leg(&dx, 1), &x)?;
        let right = h.coproduct_on_leg(&dx, 1);
        let left = h.coproduct_on_leg(&dx, 0);
        expect_equal(
            "quasi-coassociativity",
            &right.mul(h.phi()),
            &h.phi().mul(&left),
        )?;
    }
    let phi = h.phi();
    let lhs = h.coproduct_on_leg(phi, 2).mul(&h.coproduct_on_leg(phi, 0));
    let rhs = phi
        .embed(&[2, 3, 4], 4)
        .mul(&h.coproduct_on_leg(phi, 1))
        .mul(&phi.embed(&[1, 2, 3], 4));
    expect_equal("3-cocycle", &lhs, &rhs)?;
    let unit2 = h.unit(2);
    expect_equal("middle counit of associator", &h.counit_on_leg(phi, 1), &unit2)?;
    expect_equal("left counit of associator", &h.counit_on_leg(phi, 0), &unit2)?;
    expect_equal("right counit of associator", &h.counit_on_leg(phi, 2), &unit2)?;
    Ok(())
}

/// Counit laws, quasi-coassociativity, the 3-cocycle condition in `H^{⊗4}`,
/// counitality of the associator and compatibility of `Δ`, `ε` with brackets.
pub fn check_quasibialgebra(h: &QuasiHopfData, opts: CheckOptions) -> Report {
    Report::timed("quasibialgebra", ANCHOR_QUASIBIALGEBRA, || quasibialgebra(h, opts).err())
}

fn quasiantipode(h: &QuasiHopfData, opts: CheckOptions) -> Result<(), String> {
    for (i, j) in generator_pairs(h) {
        let (si, sj) = (h.antipode(&h.generator(i)), h.antipode(&h.generator(j)));
        expect_equal(
            &format!("antipode bracket [{}, {}]", h.lie().name(i), h.lie().name(j)),
            &sj.mul(&si).sub(&si.mul(&sj)),
            &h.antipode(&bracket_element(h, i, j)),
        )?;
    }
    let (alpha, beta) = (h.alpha(), h.beta());
    let mut samples = vec![h.unit(1)];
    samples.extend(h.sample_monomials(opts.word_length));
    for x in samples {
        let dx = h.coproduct(&x);
        let eps = scalar(h, h.counit(&x), 1);
        let lhs = h
            .antipode_on_leg(&dx, 0)
            .contract(&[vec![Slot::Leg(0), Slot::Elem(alpha), Slot::Leg(1)]]);
        expect_equal("alpha law", &lhs, &eps.mul(alpha))?;
        let lhs = h
            .antipode_on_leg(&dx, 1)
            .contract(&[vec![Slot::Leg(0), Slot::Elem(beta), Slot::Leg(1)]]);
        expect_equal("beta law", &lhs, &eps.mul(beta))?;
    }
    let unit = h.unit(1);
    let lhs = h.antipode_on_leg(h.phi(), 1).contract(&[vec![
        Slot::Leg(0),
        Slot::Elem(beta),
        Slot::Leg(1),
        Slot::Elem(alpha),
        Slot::Leg(2),
    ]]);
    expect_equal("associator-alpha-beta law", &lhs, &unit)?;
    let s = h.antipode_on_leg(&h.antipode_on_leg(h.phi_inv(), 0), 2);
    let lhs = s.contract(&[vec![
        Slot::Leg(0),
        Slot::Elem(alpha),
        Slot::Leg(1),
        Slot::Elem(beta),
        Slot::Leg(2),
    ]]);
    expect_equal("inverse-associator-alpha-beta law", &lhs, &unit)?;
    Ok(())
}

/// The `α` and `β` laws on sampled elements, the two associator identities and
/// compatibility of `S` with brackets.
pub fn check_quasiantipode(h: &QuasiHopfData, opts: CheckOptions) -> Report {
    Report::timed("quasiantipode", ANCHOR_QUASIANTIPODE, || quasiantipode(h, opts).err())
}

fn quasitriangular(h: &QuasiHopfData, opts: CheckOptions) -> Result<(), String> {
    let (r, r_inv) = h.require_r().expect("checked by caller");
    for x in h.sample_monomials(opts.word_length) {
        let dx = h.coproduct(&x);
        expect_equal("opposite coproduct", &dx.flip(), &r.mul(&dx).mul(r_inv))?;
    }
    let (phi, phi_inv) = (h.phi(), h.phi_inv());
    let e3 = |x: &TensorElement, pos: [usize; 3]| x.embed(&pos, 3);
    let e2 = |x: &TensorElement, pos: [usize; 2]| x.embed(&pos, 3);
    let rhs = e3(phi_inv, [2, 3, 1])
        .mul(&e2(r, [1, 3]))
        .mul(&e3(phi, [2, 1, 3]))
        .mul(&e2(r, [1, 2]))
        .mul(phi_inv);
    expect_equal("first hexagon", &h.coproduct_on_leg(r, 1), &rhs)?;
    let rhs = e3(phi, [3, 1, 2])
        .mul(&e2(r, [1, 3]))
        .mul(&e3(phi_inv, [1, 3, 2]))
        .mul(&e2(r, [2, 3]))
        .mul(phi);
    expect_equal("second hexagon", &h.coproduct_on_leg(r, 0), &rhs)?;
    Ok(())
}

/// `Δ^op = RΔR⁻¹` on sampled elements and both hexagon identities.
pub fn check_quasitriangular(h: &QuasiHopfData, opts: CheckOptions) -> Result<Report, HopfError> {
    h.require_r()?;
    Ok(Report::timed("quasitriangular", ANCHOR_QUASITRIANGULAR, || {
        quasitriangular(h, opts).err()
    }))
}

/// Whether `R₂₁ = R⁻¹`.
pub fn check_triangular(h: &QuasiHopfData) -> Result<Report, HopfError> {
    let (r, _) = h.require_r()?;
    Ok(Report::timed("triangular", ANCHOR_TRIANGULAR, || {
        expect_equal("R21 R = 1", &r.flip().mul(r), &h.unit(2)).err()
    }))
}
