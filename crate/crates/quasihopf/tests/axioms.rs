//! Axiom suites on the presets, corruption detection and gauge transforms.

use qtwist_core::{GaussianRational, HbarPoly};
use qtwist_hopf::{
    check_quasiantipode, check_quasibialgebra, check_quasitriangular, check_triangular,
    gauge_transform_antipode, preset, CheckOptions, HopfError, PresetName, PresetParams,
    QuasiHopfData, Status,
};

const ALL: [PresetName; 3] = [PresetName::Classical, PresetName::Moyal, PresetName::Rflux];

fn twisted(name: PresetName, order: usize) -> QuasiHopfData {
    preset(&PresetParams::default_for(name), order).unwrap().twisted().unwrap()
}

#[test]
fn twisted_presets_pass_every_suite_at_each_order() {
    let opts = CheckOptions::default();
    for name in ALL {
        for order in 1..=3 {
            let h = twisted(name, order);
            for r in [
                check_quasibialgebra(&h, opts),
                check_quasiantipode(&h, opts),
                check_quasitriangular(&h, opts).unwrap(),
                check_triangular(&h).unwrap(),
            ] {
                assert!(r.passed(), "{name} order {order}: {} {:?}", r.name, r.residual);
            }
        }
    }
}

/// Removes the first term of valuation `k` from `x`.
fn delete_term(x: &mut qtwist_core::TensorElement, k: usize) {
    let (key, c) = x.terms().iter().find(|(_, c)| c.valuation() == Some(k)).unwrap();
    let (key, c) = (key.clone(), c.clone());
    x.add_term(key, c.neg());
}

#[test]
fn deleting_a_coproduct_term_is_detected() {
    let h = twisted(PresetName::Rflux, 3);
    let mut parts = h.parts().clone();
    // Every ℏ-correction of the twisted coproduct is a primitive⊗primitive
    // tensor in central generators, i.e. a 2-cocycle, so deleting one of those
    // yields another valid quasi-bialgebra. Delete a structural order-0 term.
    delete_term(&mut parts.delta_gen[3], 0);
    let broken = QuasiHopfData::from_parts(parts).unwrap();
    let r = check_quasibialgebra(&broken, CheckOptions::default());
    assert_eq!(r.status, Status::Fail);
    assert!(r.residual.is_some());
}

#[test]
fn deleting_an_associator_term_is_detected() {
    let h = twisted(PresetName::Rflux, 3);
    let mut parts = h.parts().clone();
    delete_term(&mut parts.phi, 2);
    let broken = QuasiHopfData::from_parts(parts).unwrap();
    // A single trilinear term in the central translations is itself a 3-cocycle
    // commuting with every coproduct, so the quasi-bialgebra laws still hold;
    // the deletion breaks the associator-alpha-beta law and the hexagons.
    assert!(check_quasibialgebra(&broken, CheckOptions::default()).passed());
    let r = check_quasiantipode(&broken, CheckOptions::default());
    assert_eq!(r.status, Status::Fail);
    assert!(r.residual.as_deref().unwrap().starts_with("associator-alpha-beta law"));
    let r = check_quasitriangular(&broken, CheckOptions::default()).unwrap();
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn corrupted_alpha_is_detected() {
    let h = twisted(PresetName::Moyal, 3);
    let mut parts = h.parts().clone();
    let hbar = HbarPoly::monomial(1, GaussianRational::one(), 3);
    parts.alpha = h.unit(1).add(&h.generator(0).scale_series(&hbar));
    let broken = QuasiHopfData::from_parts(parts).unwrap();
    let r = check_quasiantipode(&broken, CheckOptions::default());
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn deleting_an_r_matrix_term_is_detected() {
    let h = twisted(PresetName::Rflux, 3);
    let mut parts = h.parts().clone();
    delete_term(parts.r_matrix.as_mut().unwrap(), 1);
    let broken = QuasiHopfData::from_parts(parts).unwrap();
    let rep = check_quasitriangular(&broken, CheckOptions::default()).unwrap();
    assert_eq!(rep.status, Status::Fail);
}

#[test]
fn missing_r_matrix_is_an_error() {
    let mut parts = twisted(PresetName::Classical, 2).parts().clone();
    parts.r_matrix = None;
    let h = QuasiHopfData::from_parts(parts).unwrap();
    assert_eq!(check_quasitriangular(&h, CheckOptions::default()), Err(HopfError::MissingRMatrix));
}

#[test]
fn gauge_transforms() {
    let h = twisted(PresetName::Classical, 3);
    assert_eq!(gauge_transform_antipode(&h, &h.unit(1)).unwrap(), h);
    let hbar = HbarPoly::monomial(1, GaussianRational::one(), 3);
    let u = h.unit(1).add(&h.generator(0).scale_series(&hbar));
    let g = gauge_transform_antipode(&h, &u).unwrap();
    assert!(check_quasiantipode(&g, CheckOptions::default()).passed());
    assert_ne!(g.alpha(), h.alpha());
    let singular = h.generator(0).scale_series(&hbar);
    assert!(gauge_transform_antipode(&h, &singular).is_err());

    let hf = twisted(PresetName::Rflux, 3);
    let u = hf.unit(1).add(&hf.generator(7).scale_series(&hbar));
    let g = gauge_transform_antipode(&hf, &u).unwrap();
    assert!(check_quasiantipode(&g, CheckOptions::default()).passed());
}

#[test]
fn untwisted_data_is_trivial() {
    let p = preset(&PresetParams::Classical { dim: 3 }, 3).unwrap();
    assert_eq!(p.base.phi(), &p.base.unit(3));
    assert_eq!(p.base.r_matrix().unwrap(), &p.base.unit(2));
}
