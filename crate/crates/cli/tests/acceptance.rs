//! End-to-end acceptance criteria. Each criterion prints one `PASS` or
//! `FAIL` line with its wall-clock time; the test fails if any criterion
//! fails or exceeds its time budget.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qtwist_bimod::suites::{HomSuite, SuiteConfig};
use qtwist_bimod::{HomOperator, OperatorSampler, Shape};
use qtwist_cli::{parse_poly_expr, run};
use qtwist_core::{Gen, GaussianRational, HbarPoly, TensorElement};
use qtwist_hopf::{
    apply_twist, check_quasiantipode, check_quasibialgebra, check_quasitriangular, check_triangular, invert_element,
    levi_civita, preset, standard_theta, CheckOptions, CochainTwist, FluxLayout, PresetName, PresetParams,
    QuasiHopfData, Status,
};
use qtwist_repr::{monomial_triples, monomials_up_to, AlgebraObject, PolyFunction, Sampler};
use serde_json::Value;

const N: usize = 3;
const PRESETS: [PresetName; 3] = [PresetName::Classical, PresetName::Moyal, PresetName::Rflux];

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn criterion(results: &mut Vec<bool>, id: usize, what: &str, budget: Duration, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| {
        if elapsed <= budget {
            Ok(())
        } else {
            Err(format!("took {elapsed:.1?}, budget {budget:?}"))
        }
    });
    // Written to the process's stdout directly so the lines survive the
    // test harness's output capture.
    let line = match &outcome {
        Ok(()) => format!("PASS {id}: {what} ({elapsed:.2?})\n"),
        Err(why) => format!("FAIL {id}: {what} ({elapsed:.2?}): {why}\n"),
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    results.push(outcome.is_ok());
}

fn cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = run(std::iter::once("qtwist").chain(args.iter().copied()));
    if out.code == 2 {
        return Err(format!("{args:?}: {}", out.stderr));
    }
    Ok((out.code, out.stdout))
}

fn cli_json(args: &[&str]) -> Result<(i32, Value), String> {
    let (code, text) = cli(args)?;
    Ok((code, serde_json::from_str(&text).map_err(|e| e.to_string())?))
}

fn hbar_pow(k: usize, c: GaussianRational, order: usize) -> HbarPoly {
    HbarPoly::monomial(k, c, order)
}

fn gen_tensor(h: &QuasiHopfData, gs: &[Gen]) -> TensorElement {
    gs.iter().map(|&g| h.generator(g)).reduce(|a, b| a.tensor(&b)).expect("at least one leg")
}

/// Removes the first term of ℏ-valuation `k`.
fn delete_term(x: &mut TensorElement, k: usize) {
    let (key, c) = x.terms().iter().find(|(_, c)| c.valuation() == Some(k)).map(|(k, c)| (k.clone(), c.clone())).unwrap();
    x.add_term(key, c.neg());
}

fn text_of(v: &Value) -> Result<&str, String> {
    v["text"].as_str().ok_or_else(|| format!("no text in {v}"))
}

/// Twisted flux coproducts and associator, from the CLI, against hand-built oracles.
fn flux_twist() -> Outcome {
    let (code, doc) = cli_json(&["twist", "--preset", "rflux", "--order", "3"])?;
    ensure!(code == 0, "exit code {code}");
    let p = preset(&PresetParams::default_for(PresetName::Rflux), N).map_err(|e| e.to_string())?;
    let h = &p.base;
    let lay = FluxLayout { n: 3 };
    let r = levi_civita(3);
    let half_i_hbar = hbar_pow(1, GaussianRational::imag_ratio(1, 2), N);
    let i_hbar = hbar_pow(1, GaussianRational::i(), N);
    let coproduct = &doc["data"]["coproduct"];
    let shown = |g: Gen| text_of(&coproduct[h.lie().name(g)]).map(str::to_string);

    for i in 0..3 {
        let t = h.generator(lay.t(i));
        ensure!(shown(lay.t(i))? == h.coproduct(&t).to_string(), "Δ_F(t{})", i + 1);

        let mut expected = h.coproduct(&h.generator(lay.tt(i)));
        for j in 0..3 {
            for k in 0..3 {
                if !r[i][j][k].is_zero() {
                    let term = gen_tensor(h, &[lay.t(j), lay.t(k)]).scale(&r[i][j][k]);
                    expected = expected.add(&term.scale_series(&half_i_hbar));
                }
            }
        }
        ensure!(shown(lay.tt(i))? == expected.to_string(), "Δ_F(tt{}): {} vs {expected}", i + 1, shown(lay.tt(i))?);

        for j in i + 1..3 {
            let skew = gen_tensor(h, &[lay.t(i), lay.t(j)]).sub(&gen_tensor(h, &[lay.t(j), lay.t(i)]));
            let expected = h.coproduct(&h.generator(lay.m(i, j))).sub(&skew.scale_series(&i_hbar));
            ensure!(shown(lay.m(i, j))? == expected.to_string(), "Δ_F(m{}{})", i + 1, j + 1);
        }
    }

    let mut exponent = TensorElement::zero(h.lie().clone(), 3, N);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                if !r[i][j][k].is_zero() {
                    exponent = exponent.add(&gen_tensor(h, &[lay.t(i), lay.t(j), lay.t(k)]).scale(&r[i][j][k]));
                }
            }
        }
    }
    let phi = exponent.scale_series(&hbar_pow(2, GaussianRational::ratio(1, 2), N)).exp_truncated().map_err(|e| e.to_string())?;
    ensure!(text_of(&doc["data"]["associator"])? == phi.to_string(), "φ_F = {}", text_of(&doc["data"]["associator"])?);
    Ok(())
}

/// Moyal: Δ_F = Δ, φ_F = 1, R_F = F⁻², triangular.
fn moyal_regression() -> Outcome {
    let (code, doc) = cli_json(&["twist", "--preset", "moyal"])?;
    ensure!(code == 0, "exit code {code}");
    let p = preset(&PresetParams::default_for(PresetName::Moyal), N).map_err(|e| e.to_string())?;
    let (h, hf) = (&p.base, p.twisted().map_err(|e| e.to_string())?);
    for x in h.sample_monomials(3) {
        ensure!(hf.coproduct(&x) == h.coproduct(&x), "Δ_F ≠ Δ on {x}");
    }
    ensure!(text_of(&doc["data"]["associator"])? == h.unit(3).to_string(), "φ_F ≠ 1");
    let f = p.twist.f();
    let f_minus_two = invert_element(&f.mul(f)).map_err(|e| e.to_string())?;
    ensure!(hf.r_matrix() == Some(&f_minus_two), "R_F ≠ F⁻²");
    ensure!(text_of(&doc["data"]["rmatrix"])? == f_minus_two.to_string(), "reported R_F ≠ F⁻²");
    let tri = check_triangular(&hf).map_err(|e| e.to_string())?;
    ensure!(tri.passed(), "triangularity: {:?}", tri.residual);
    Ok(())
}

/// Axiom suites through the CLI for every preset, and detection of corrupted data.
fn axiom_suites() -> Outcome {
    for name in PRESETS {
        let start = Instant::now();
        let (code, doc) = cli_json(&["verify", "--preset", name.as_str(), "--order", "3", "--checks", "axioms,quasitriangular"])?;
        ensure!(start.elapsed() < Duration::from_secs(60), "{name} took {:?}", start.elapsed());
        ensure!(code == 0 && doc["overall"] == "pass", "{name}: {doc}");
        let names: Vec<&str> = doc["checks"].as_array().unwrap().iter().filter_map(|c| c["name"].as_str()).collect();
        ensure!(names == ["quasiantipode", "quasibialgebra", "quasitriangular", "triangular"], "{name}: {names:?}");
    }

    let opts = CheckOptions::default();
    let hf = preset(&PresetParams::default_for(PresetName::Rflux), N).unwrap().twisted().unwrap();
    let corrupt = |edit: &dyn Fn(&mut qtwist_hopf::QuasiHopfParts)| {
        let mut parts = hf.parts().clone();
        edit(&mut parts);
        QuasiHopfData::from_parts(parts).unwrap()
    };

    let broken = corrupt(&|p| delete_term(&mut p.delta_gen[3], 0));
    let r = check_quasibialgebra(&broken, opts);
    ensure!(r.status == Status::Fail && r.residual.is_some(), "deleted coproduct term undetected");

    let broken = corrupt(&|p| delete_term(&mut p.phi, 2));
    ensure!(check_quasiantipode(&broken, opts).status == Status::Fail, "deleted associator term undetected by quasiantipode");
    ensure!(check_quasitriangular(&broken, opts).unwrap().status == Status::Fail, "deleted associator term undetected by hexagons");

    let broken = corrupt(&|p| delete_term(p.r_matrix.as_mut().unwrap(), 1));
    ensure!(check_quasitriangular(&broken, opts).unwrap().status == Status::Fail, "deleted R-matrix term undetected");

    let hbar = hbar_pow(1, GaussianRational::one(), N);
    let broken = corrupt(&|p| p.alpha = hf.unit(1).add(&hf.generator(0).scale_series(&hbar)));
    ensure!(check_quasiantipode(&broken, opts).status == Status::Fail, "corrupted α undetected");
    Ok(())
}

/// (H_F)_{F⁻¹} = H and twisting by F then G equals twisting by G·F.
fn functoriality() -> Outcome {
    for name in PRESETS {
        let p = preset(&PresetParams::default_for(name), N).unwrap();
        let hf = p.twisted().unwrap();
        let back = apply_twist(&hf, &p.twist.inverse()).map_err(|e| e.to_string())?;
        ensure!(back == p.base, "{name}: twisting back does not recover H");
    }
    let p = preset(&PresetParams::default_for(PresetName::Rflux), N).unwrap();
    let hf = p.twisted().unwrap();
    let lay = FluxLayout { n: 3 };
    let x = gen_tensor(&hf, &[lay.m(0, 1), lay.tt(2)])
        .add(&gen_tensor(&hf, &[lay.t(0), lay.m(1, 2)]).scale(&GaussianRational::from_int(2)))
        .scale_series(&hbar_pow(1, GaussianRational::one(), N));
    let g = CochainTwist::new(&hf, x.exp_truncated().unwrap()).map_err(|e| e.to_string())?;
    let direct = apply_twist(&p.base, &p.twist.compose_after(&g)).map_err(|e| e.to_string())?;
    let stepwise = apply_twist(&hf, &g).map_err(|e| e.to_string())?;
    ensure!(direct == stepwise, "composite twist law fails");
    Ok(())
}

fn twisted_algebra(params: &PresetParams, order: usize) -> AlgebraObject {
    AlgebraObject::from_params(params, order).unwrap().1
}

/// Star-product properties.
fn star_products() -> Outcome {
    for name in PRESETS {
        let a = twisted_algebra(&PresetParams::default_for(name), N);
        let mut s = Sampler::new(2024, a.nvars(), N);
        let pairs = s.pairs(50, 3);
        let r = a.check_classical_limit(&pairs);
        ensure!(r.passed(), "{name} classical limit: {:?}", r.residual);
        let r = a.check_braided_commutativity(&pairs).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "{name} braided commutativity: {:?}", r.residual);
    }

    // [x^i, x^j]_⋆ = iℏΘ^{ij} for a 4-dimensional Θ.
    let theta = standard_theta(4);
    let moyal4 = twisted_algebra(&PresetParams::Moyal { theta: theta.clone() }, N);
    for i in 0..4 {
        for j in 0..4 {
            let (xi, xj) = (moyal4.coordinate(i), moyal4.coordinate(j));
            let comm = moyal4.star(&xi, &xj).unwrap().sub(&moyal4.star(&xj, &xi).unwrap());
            let oracle = PolyFunction::constant(4, hbar_pow(1, GaussianRational::i() * theta[i][j].clone(), N));
            ensure!(comm == oracle, "[x{}, x{}] = {}", i + 1, j + 1, comm.render(moyal4.coordinates()));
        }
    }

    // Strict associativity of the Moyal product at order 4 on every triple of
    // monomials of degree at most 3 (a superset of the total-degree triples).
    let moyal = twisted_algebra(&PresetParams::default_for(PresetName::Moyal), 4);
    let coords: Vec<usize> = (0..moyal.nvars()).collect();
    let monos = monomials_up_to(moyal.nvars(), 4, &coords, 3);
    for a in &monos {
        for b in &monos {
            for c in &monos {
                let (weak, plain) = moyal.weak_assoc_defect(a, b, c).unwrap();
                ensure!(weak.is_zero() && plain.is_zero(), "moyal associativity at ({}, {}, {})", a.render(moyal.coordinates()), b.render(moyal.coordinates()), c.render(moyal.coordinates()));
            }
        }
    }

    // R-flux: weak associativity on every monomial triple of total degree ≤ 3,
    // and the plain defect of coordinate triples is (ℏ²/2)R^{ijk}.
    let flux = twisted_algebra(&PresetParams::default_for(PresetName::Rflux), N);
    let coords: Vec<usize> = (0..flux.nvars()).collect();
    let triples = monomial_triples(flux.nvars(), N, &coords, 3);
    ensure!(triples.len() == 1330, "{} triples", triples.len());
    let r = flux.check_weak_associativity(&triples);
    ensure!(r.passed(), "flux weak associativity: {:?}", r.residual);
    let eps = levi_civita(3);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let (_, plain) = flux.weak_assoc_defect(&flux.coordinate(i), &flux.coordinate(j), &flux.coordinate(k)).unwrap();
                let oracle = PolyFunction::constant(6, hbar_pow(2, eps[i][j][k].clone() * GaussianRational::ratio(1, 2), N));
                ensure!(plain == oracle, "plain defect at (x{}, x{}, x{}) = {}", i + 1, j + 1, k + 1, plain.render(flux.coordinates()));
            }
        }
    }
    Ok(())
}

/// Every internal-hom identity, 20 samples each, on A¹ and A², for all presets.
fn internal_hom_suites() -> Outcome {
    let cfg = SuiteConfig { samples: 20, seed: 2024 };
    for name in PRESETS {
        let suite = HomSuite::new(&PresetParams::default_for(name), N).map_err(|e| e.to_string())?;
        let reports = suite.run_all(&cfg);
        ensure!(reports.len() >= 60, "{name}: only {} identities", reports.len());
        for r in &reports {
            ensure!(r.passed(), "{}: {:?}", r.name, r.residual);
        }
    }
    Ok(())
}

/// hom_A membership with degree bound 3 over the commutative function algebra.
fn hom_a_membership() -> Outcome {
    let suite = HomSuite::new(&PresetParams::default_for(PresetName::Classical), N).map_err(|e| e.to_string())?;
    let b = suite.bimodule();
    let mut s = OperatorSampler::new(b.calc(), 77);
    for (src, tgt) in [(1, 1), (2, 2), (1, 2), (2, 1)] {
        let entries = (0..src * tgt).map(|_| b.algebra().left_multiplication(&s.coefficient()).unwrap()).collect();
        let m = HomOperator::from_entries(Shape::Leaf(src), Shape::Leaf(tgt), entries).map_err(|e| e.to_string())?;
        let r = b.is_right_a_linear(&m, 3);
        ensure!(r.passed(), "A-matrix {src}→{tgt}: {:?}", r.residual);
    }
    for rank in [1, 2] {
        let r = b.is_right_a_linear(&b.hat_l(&s.poly(), rank).map_err(|e| e.to_string())?, 3);
        ensure!(r.passed(), "l̂(a) on A{rank}: {:?}", r.residual);
    }
    let d = b.calc().rho(&Shape::Leaf(1), &b.calc().hopf().generator(0)).map_err(|e| e.to_string())?;
    let r = b.is_right_a_linear(&HomOperator::diagonal(Shape::Leaf(1), Shape::Leaf(1), &d), 3);
    ensure!(r.status == Status::Fail, "the derivation ∂₁ was accepted");
    let residual = r.residual.unwrap_or_default();
    ensure!(residual.contains("Leibniz") && residual.ends_with("a = x1: [0] (1)"), "unexpected residual {residual:?}");
    Ok(())
}

/// Byte-identical reports and print/parse round-trips.
fn determinism_and_round_trip() -> Outcome {
    let runs: [&[&str]; 5] = [
        &["verify", "--preset", "rflux", "--order", "3"],
        &["verify", "--preset", "moyal", "--seed", "9", "--checks", "all"],
        &["twist", "--preset", "rflux"],
        &["star", "--preset", "rflux", "--expr", "x1*p2 + 3/2", "--expr", "(x2 - i*p1)^2"],
        &["hom", "--preset", "rflux", "--suite", "closed", "--samples", "3"],
    ];
    for args in runs {
        let (code, first) = cli(args)?;
        let (_, second) = cli(args)?;
        ensure!(code == 0, "{args:?} exited {code}");
        ensure!(first == second, "{args:?}: reports differ");
        ensure!(!first.contains("\"ms\""), "{args:?}: timing leaked into the report");
    }

    let a = twisted_algebra(&PresetParams::default_for(PresetName::Rflux), N);
    let mut s = Sampler::new(20261019, a.nvars(), N);
    for k in 0..100 {
        let p = if k % 2 == 0 { s.poly(3, 5) } else { s.hbar_poly(3, 5) };
        let text = p.render(a.coordinates());
        let back = parse_poly_expr(&text, a.coordinates(), N).map_err(|e| format!("{text:?}: {e}"))?;
        ensure!(back == p, "round trip #{k} changed {text:?} into {:?}", back.render(a.coordinates()));
    }
    Ok(())
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    let secs = Duration::from_secs;
    criterion(&mut results, 1, "flux twist: coproducts and associator at order 3", secs(10), flux_twist);
    criterion(&mut results, 2, "moyal regression: untwisted coproduct, trivial associator, R = F⁻², triangular", secs(5), moyal_regression);
    criterion(&mut results, 3, "axiom suites on all presets and corruption oracles", secs(180), axiom_suites);
    criterion(&mut results, 4, "twist functoriality and composite law", secs(60), functoriality);
    criterion(&mut results, 5, "star-product properties", secs(120), star_products);
    criterion(&mut results, 6, "internal-hom suites on A¹ and A², 20 samples", secs(300), internal_hom_suites);
    criterion(&mut results, 7, "hom_A membership with degree bound 3", secs(60), hom_a_membership);
    criterion(&mut results, 8, "report determinism and parser round-trip", secs(60), determinism_and_round_trip);
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
