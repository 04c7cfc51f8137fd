//! Internal-hom calculus: property suites per preset, the closed-form
//! comparison map against its defining sandwich, and hom_A membership.

use std::sync::OnceLock;

use proptest::prelude::*;
use qtwist_bimod::suites::{HomSuite, SuiteConfig};
use qtwist_bimod::{HomOperator, OperatorSampler, SampleProfile, Shape};
use qtwist_hopf::{PresetName, PresetParams, Status};

const N: usize = 3;

fn suite(name: PresetName) -> &'static HomSuite {
    static CACHE: [OnceLock<HomSuite>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[name as usize].get_or_init(|| HomSuite::new(&PresetParams::default_for(name), N).unwrap())
}

fn assert_all_pass(reports: &[qtwist_hopf::Report]) {
    for r in reports {
        assert!(r.passed(), "{}: {:?}", r.name, r.residual);
    }
}

#[test]
fn classical_and_moyal_suites_pass() {
    let cfg = SuiteConfig { samples: 5, seed: 7 };
    for name in [PresetName::Classical, PresetName::Moyal] {
        let reports = suite(name).run_all(&cfg);
        assert!(reports.len() >= 60, "{name}: {} reports", reports.len());
        assert_all_pass(&reports);
    }
}

#[test]
fn flux_closed_and_bimodule_suites_pass() {
    let cfg = SuiteConfig { samples: 3, seed: 11 };
    let s = suite(PresetName::Rflux);
    for big in [1, 2] {
        assert_all_pass(&s.run_closed_structure(&cfg, big));
        assert_all_pass(&s.run_bimodule(&cfg, big));
    }
}

#[test]
fn report_names_carry_preset_and_configuration() {
    let reports = suite(PresetName::Classical).run_closed_structure(&SuiteConfig { samples: 1, seed: 1 }, 2);
    assert!(reports.iter().all(|r| r.name.ends_with("[classical, A²]")));
}

#[test]
fn gamma_matches_the_defining_sandwich() {
    // Direct form: γ(L) = Σ ρ(F⁻¹₍₁₎) ∘ L ∘ ρ(S(F⁻¹₍₂₎)), and γ⁻¹ with F.
    for name in [PresetName::Moyal, PresetName::Rflux] {
        let g = suite(name).comparison();
        let base = g.base();
        let h = base.hopf();
        let sandwich = h.antipode_on_leg(g.twist().f_inv(), 1);
        let sandwich_inv = h.antipode_on_leg(g.twist().f(), 1);
        let mut s = OperatorSampler::with_profile(g.twisted(), 3, SampleProfile::LIGHT);
        for (src, tgt) in [(1, 1), (1, 2), (2, 1)] {
            let l = s.operator(src, tgt).unwrap();
            let direct = base.chain(&sandwich, &[l.target(), l.source()], &[&l]).unwrap();
            assert_eq!(g.gamma(&l).unwrap(), direct, "{name} γ on {src}→{tgt}");
            let direct_inv = base.chain(&sandwich_inv, &[l.target(), l.source()], &[&l]).unwrap();
            assert_eq!(g.gamma_inv(&l).unwrap(), direct_inv, "{name} γ⁻¹ on {src}→{tgt}");
        }
    }
}

#[test]
fn transport_matches_coherence_conjugation() {
    for name in [PresetName::Moyal, PresetName::Rflux] {
        let g = suite(name).comparison();
        let tw = g.twisted();
        let mut s = OperatorSampler::with_profile(tw, 5, SampleProfile::LIGHT);
        let (l, lp) = (s.operator(1, 1).unwrap(), s.operator(1, 1).unwrap());
        let k = tw.tensor_hom(&l, &lp).unwrap();
        let (sa, sb) = k.source().factors().unwrap();
        let (ta, tb) = k.target().factors().unwrap();
        let pre = g.coherence(sa, sb, true).unwrap();
        let post = g.coherence(ta, tb, false).unwrap();
        let direct = post.compose(&k.compose(&pre).unwrap()).unwrap();
        assert_eq!(g.transport(&k).unwrap(), direct, "{name}");
    }
}

#[test]
fn classical_gamma_is_the_identity() {
    let g = suite(PresetName::Classical).comparison();
    let mut s = OperatorSampler::new(g.twisted(), 9);
    let l = s.operator(2, 1).unwrap();
    assert_eq!(g.gamma(&l).unwrap(), l);
}

fn multiplication_matrix(name: PresetName, seed: u64, rank: usize) -> HomOperator {
    let b = suite(name).bimodule();
    let mut s = OperatorSampler::new(b.calc(), seed);
    let entries = (0..rank * rank).map(|_| b.algebra().left_multiplication(&s.coefficient()).unwrap()).collect();
    HomOperator::from_entries(Shape::Leaf(rank), Shape::Leaf(rank), entries).unwrap()
}

#[test]
fn function_matrices_are_right_linear_in_the_commutative_case() {
    let b = suite(PresetName::Classical).bimodule();
    for seed in 0..3 {
        let r = b.is_right_a_linear(&multiplication_matrix(PresetName::Classical, seed, 2), 3);
        assert!(r.passed(), "{:?}", r.residual);
    }
}

#[test]
fn hat_l_is_right_linear() {
    for name in [PresetName::Classical, PresetName::Moyal] {
        let b = suite(name).bimodule();
        let mut s = OperatorSampler::new(b.calc(), 21);
        for rank in [1, 2] {
            let l = b.hat_l(&s.poly(), rank).unwrap();
            let r = b.is_right_a_linear(&l, 3);
            assert!(r.passed(), "{name} rank {rank}: {:?}", r.residual);
        }
    }
}

#[test]
fn a_derivation_fails_with_a_leibniz_residual() {
    for name in [PresetName::Classical, PresetName::Moyal] {
        let b = suite(name).bimodule();
        let c = b.calc();
        let d = c.rho(&Shape::Leaf(1), &c.hopf().generator(0)).unwrap();
        let r = b.is_right_a_linear(&HomOperator::diagonal(Shape::Leaf(1), Shape::Leaf(1), &d), 3);
        assert_eq!(r.status, Status::Fail, "{name}");
        let residual = r.residual.unwrap();
        assert_eq!(residual, "right A-linearity (Leibniz) defect at v = (1)·e0, a = x1: [0] (1)");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn moyal_closed_structure_holds_for_any_seed(seed in any::<u64>()) {
        let reports = suite(PresetName::Moyal).run_closed_structure(&SuiteConfig { samples: 1, seed }, 2);
        for r in reports {
            prop_assert!(r.passed(), "{}: {:?}", r.name, r.residual);
        }
    }

    #[test]
    fn flux_gamma_roundtrips(seed in any::<u64>(), src in 1usize..=2, tgt in 1usize..=2) {
        let g = suite(PresetName::Rflux).comparison();
        let mut s = OperatorSampler::with_profile(g.twisted(), seed, SampleProfile::LIGHT);
        let l = s.operator(src, tgt).unwrap();
        prop_assert_eq!(g.gamma_inv(&g.gamma(&l).unwrap()).unwrap(), l.clone());
        prop_assert_eq!(g.gamma(&g.gamma_inv(&l).unwrap()).unwrap(), l);
    }

    #[test]
    fn hat_l_is_multiplicative(seed in any::<u64>()) {
        let b = suite(PresetName::Moyal).bimodule();
        let mut s = OperatorSampler::new(b.calc(), seed);
        let (p, q) = (s.poly(), s.poly());
        let pq = b.algebra().star(&p, &q).unwrap();
        let lhs = b.hat_l(&pq, 1).unwrap();
        let rhs = b.calc().internal_comp(&b.hat_l(&p, 1).unwrap(), &b.hat_l(&q, 1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
