//! Twisted structure maps of the example presets, twist functoriality and
//! element inversion.

use std::collections::BTreeMap;

use proptest::prelude::*;
use qtwist_core::{Gen, GaussianRational, HbarPoly, PbwMonomial, TensorElement};
use qtwist_hopf::{
    apply_twist, invert_element, preset, CochainTwist, FluxLayout, HopfError, PresetName,
    PresetParams, QuasiHopfData,
};

const N: usize = 3;

fn hbar_pow(k: usize, c: GaussianRational) -> HbarPoly {
    HbarPoly::monomial(k, c, N)
}

fn gen_tensor(h: &QuasiHopfData, gs: &[Gen]) -> TensorElement {
    gs.iter()
        .map(|&g| h.generator(g))
        .reduce(|a, b| a.tensor(&b))
        .expect("at least one leg")
}

#[test]
fn flux_twisted_coproduct_and_associator() {
    let p = preset(&PresetParams::default_for(PresetName::Rflux), N).unwrap();
    let h = &p.base;
    let hf = p.twisted().unwrap();
    let layout = FluxLayout { n: 3 };
    let r = qtwist_hopf::levi_civita(3);
    let half_i_hbar = hbar_pow(1, GaussianRational::imag_ratio(1, 2));
    let i_hbar = hbar_pow(1, GaussianRational::i());

    for i in 0..3 {
        let t = h.generator(layout.t(i));
        assert_eq!(hf.coproduct(&t), h.coproduct(&t), "translation t{}", i + 1);

        let tt = h.generator(layout.tt(i));
        let mut expected = h.coproduct(&tt);
        for j in 0..3 {
            for k in 0..3 {
                if r[i][j][k].is_zero() {
                    continue;
                }
                let term = gen_tensor(h, &[layout.t(j), layout.t(k)]).scale(&r[i][j][k]);
                expected = expected.add(&term.scale_series(&half_i_hbar));
            }
        }
        assert_eq!(hf.coproduct(&tt), expected, "dual translation tt{}", i + 1);

        for j in i + 1..3 {
            let m = h.generator(layout.m(i, j));
            let skew = gen_tensor(h, &[layout.t(i), layout.t(j)])
                .sub(&gen_tensor(h, &[layout.t(j), layout.t(i)]));
            let expected = h.coproduct(&m).sub(&skew.scale_series(&i_hbar));
            assert_eq!(hf.coproduct(&m), expected, "rotation m{}{}", i + 1, j + 1);
        }
    }

    let mut exponent = TensorElement::zero(h.lie().clone(), 3, N);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                if !r[i][j][k].is_zero() {
                    let term = gen_tensor(h, &[layout.t(i), layout.t(j), layout.t(k)]);
                    exponent = exponent.add(&term.scale(&r[i][j][k]));
                }
            }
        }
    }
    let expected_phi = exponent
        .scale_series(&hbar_pow(2, GaussianRational::ratio(1, 2)))
        .exp_truncated()
        .unwrap();
    assert_eq!(hf.phi(), &expected_phi);
}

#[test]
fn flux_bracket_table() {
    let p = preset(&PresetParams::default_for(PresetName::Rflux), N).unwrap();
    let lie = p.base.lie();
    let names: Vec<&str> = lie.names().iter().map(String::as_str).collect();
    assert_eq!(names, ["t1", "t2", "t3", "m12", "m13", "m23", "tt1", "tt2", "tt3"]);
    let idx = |s: &str| lie.index_of(s).unwrap();
    let one = GaussianRational::one();
    let minus = GaussianRational::from_int(-1);
    // [tt_i, m_jk] = δ_ij t_k − δ_ik t_j.
    assert_eq!(lie.bracket(idx("tt1"), idx("m12")), &[(idx("t2"), one.clone())]);
    assert_eq!(lie.bracket(idx("tt2"), idx("m12")), &[(idx("t1"), minus.clone())]);
    assert_eq!(lie.bracket(idx("tt3"), idx("m13")), &[(idx("t1"), minus)]);
    assert_eq!(lie.bracket(idx("tt2"), idx("m23")), &[(idx("t3"), one)]);
    assert!(lie.bracket(idx("tt3"), idx("m12")).is_empty());
    assert!(lie.bracket(idx("m12"), idx("m23")).is_empty());
    assert!(lie.bracket(idx("t1"), idx("tt1")).is_empty());
    assert_eq!(lie.jacobi_violation(), None);
}

#[test]
fn moyal_twist_is_a_cocycle_with_twisted_r_matrix() {
    let p = preset(&PresetParams::default_for(PresetName::Moyal), N).unwrap();
    let h = &p.base;
    let hf = p.twisted().unwrap();
    for g in 0..2 {
        let x = h.generator(g);
        assert_eq!(hf.coproduct(&x), h.coproduct(&x));
    }
    assert_eq!(hf.phi(), &h.unit(3));
    let f = p.twist.f();
    assert_eq!(hf.r_matrix().unwrap(), &invert_element(&f.mul(f)).unwrap());
    assert_eq!(hf.r_matrix().unwrap().flip().mul(hf.r_matrix().unwrap()), h.unit(2));
}

#[test]
fn moyal_inverse_twist_first_order() {
    let p = preset(&PresetParams::default_for(PresetName::Moyal), N).unwrap();
    let h = &p.base;
    let f_inv = p.twist.f_inv();
    let mut first = TensorElement::zero(h.lie().clone(), 2, N);
    for (k, c) in f_inv.terms() {
        first.add_term(k.clone(), HbarPoly::monomial(1, c.coeff(1).clone(), N));
    }
    let expected = gen_tensor(h, &[0, 1])
        .sub(&gen_tensor(h, &[1, 0]))
        .scale_series(&hbar_pow(1, GaussianRational::imag_ratio(1, 2)));
    assert_eq!(first, expected);
}

/// Commutative oracle: `μ(S⊗id)(F⁻¹)` for `F⁻¹ = exp((iℏ/2)Θ^{ij} t_i⊗t_j)`,
/// expanded order by order over explicit index tuples with monomials stored
/// as exponent vectors of the polynomial ring `k[t_1, t_2]`.
fn moyal_alpha_oracle(theta: &[Vec<i64>]) -> BTreeMap<(usize, Vec<u32>), GaussianRational> {
    let d = theta.len();
    let mut out: BTreeMap<(usize, Vec<u32>), GaussianRational> = BTreeMap::new();
    let half_i = GaussianRational::imag_ratio(1, 2);
    for k in 0..=N {
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
        let mut tuples: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for _ in 0..k {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    pairs.iter().map(move |p| {
                        let mut u = t.clone();
                        u.push(*p);
                        u
                    })
                })
                .collect();
        }
        let fact: i64 = (1..=k as i64).product();
        for t in tuples {
            let mut c = &half_i.pow(k as u32) * &GaussianRational::ratio(1, fact);
            let mut exps = vec![0u32; d];
            for &(i, j) in &t {
                c = &c * &GaussianRational::from_int(-theta[i][j]);
                exps[i] += 1;
                exps[j] += 1;
            }
            *out.entry((k, exps)).or_default() += &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[test]
fn moyal_alpha_is_one_at_every_order() {
    let oracle = moyal_alpha_oracle(&[vec![0, 1], vec![-1, 0]]);
    assert_eq!(oracle.keys().collect::<Vec<_>>(), vec![&(0, vec![0, 0])]);
    let p = preset(&PresetParams::default_for(PresetName::Moyal), N).unwrap();
    let hf = p.twisted().unwrap();
    assert_eq!(hf.alpha(), &p.base.unit(1));
    assert_eq!(hf.beta(), &p.base.unit(1));
}

#[test]
fn trivial_twist_changes_nothing() {
    let p = preset(&PresetParams::default_for(PresetName::Rflux), N).unwrap();
    let same = apply_twist(&p.base, &CochainTwist::trivial(&p.base)).unwrap();
    assert_eq!(same, p.base);
}

#[test]
fn twisting_back_recovers_the_original() {
    for name in [PresetName::Moyal, PresetName::Rflux] {
        let p = preset(&PresetParams::default_for(name), N).unwrap();
        let hf = p.twisted().unwrap();
        let back = apply_twist(&hf, &p.twist.inverse()).unwrap();
        assert_eq!(back, p.base, "{name}");
    }
}

#[test]
fn composite_twist_law() {
    let p = preset(&PresetParams::default_for(PresetName::Rflux), N).unwrap();
    let hf = p.twisted().unwrap();
    let layout = FluxLayout { n: 3 };
    // G = exp(ℏ(m12⊗tt3 + 2 t1⊗m23)) has generator legs only, hence is counital.
    let x = gen_tensor(&hf, &[layout.m(0, 1), layout.tt(2)])
        .add(&gen_tensor(&hf, &[layout.t(0), layout.m(1, 2)]).scale(&GaussianRational::from_int(2)))
        .scale_series(&hbar_pow(1, GaussianRational::one()));
    let g = CochainTwist::new(&hf, x.exp_truncated().unwrap()).unwrap();
    let direct = apply_twist(&p.base, &p.twist.compose_after(&g)).unwrap();
    let stepwise = apply_twist(&hf, &g).unwrap();
    assert_eq!(direct, stepwise);
}

#[test]
fn non_counital_twist_rejected() {
    let p = preset(&PresetParams::default_for(PresetName::Classical), N).unwrap();
    let h = &p.base;
    let bad = h.unit(2).add(&gen_tensor(h, &[0]).tensor(&h.unit(1)).scale_series(&hbar_pow(1, GaussianRational::one())));
    assert!(matches!(CochainTwist::new(h, bad), Err(HopfError::NotCounital(_))));
}

#[test]
fn element_inversion_examples() {
    let p = preset(&PresetParams::default_for(PresetName::Classical), 2).unwrap();
    let h = &p.base;
    assert_eq!(invert_element(&h.unit(2)).unwrap(), h.unit(2));
    let hbar = |k| HbarPoly::monomial(k, GaussianRational::one(), 2);
    let t12 = gen_tensor(h, &[0, 1]);
    let x = h.unit(2).add(&t12.scale_series(&hbar(1)));
    let sq = TensorElement::monomial(
        h.lie().clone(),
        2,
        vec![PbwMonomial::from_sorted(vec![0, 0]), PbwMonomial::from_sorted(vec![1, 1])],
        hbar(2),
    );
    let expected = h.unit(2).sub(&t12.scale_series(&hbar(1))).add(&sq);
    assert_eq!(invert_element(&x).unwrap(), expected);
    assert!(invert_element(&t12.scale_series(&hbar(1))).is_err());
}

#[test]
fn invalid_parameters_rejected() {
    let g = GaussianRational::from_int;
    let not_skew = PresetParams::Moyal { theta: vec![vec![g(0), g(1)], vec![g(1), g(0)]] };
    assert!(matches!(preset(&not_skew, N), Err(HopfError::InvalidParams(_))));
    let odd = PresetParams::Moyal { theta: vec![vec![g(0)]] };
    assert!(preset(&odd, N).is_err());
    let mut r = qtwist_hopf::levi_civita(3);
    r[0][1][2] = g(2);
    assert!(matches!(preset(&PresetParams::Rflux { r }, N), Err(HopfError::InvalidParams(_))));
    assert!(preset(&PresetParams::Classical { dim: 2 }, 0).is_err());
}

fn arb_unipotent() -> impl Strategy<Value = Vec<(u8, u8, i64, usize)>> {
    prop::collection::vec((0u8..9, 0u8..9, -3i64..=3, 1usize..=N), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inverse_is_two_sided(spec in arb_unipotent()) {
        let p = preset(&PresetParams::default_for(PresetName::Rflux), N).unwrap();
        let h = &p.base;
        let mut x = h.unit(2);
        for (a, b, c, k) in spec {
            let term = gen_tensor(h, &[a as Gen]).tensor(&gen_tensor(h, &[b as Gen]));
            x = x.add(&term.scale_series(&hbar_pow(k, GaussianRational::from_int(c))));
        }
        let y = invert_element(&x).unwrap();
        prop_assert_eq!(x.mul(&y), h.unit(2));
        prop_assert_eq!(y.mul(&x), h.unit(2));
    }
}
