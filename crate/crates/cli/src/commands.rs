//! Subcommands and their dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtwist_bimod::suites::{HomSuite, SuiteConfig};
use qtwist_core::PbwMonomial;
use qtwist_hopf::{
    check_quasiantipode, check_quasibialgebra, check_quasitriangular, check_triangular, CheckOptions, Preset, Report,
};
use qtwist_repr::algebra::ANCHOR_WEAK_ASSOCIATIVITY;
use qtwist_repr::{monomial_triples, AlgebraObject, PolyFunction, Sampler};
use serde_json::{json, Map, Value};

use crate::config::{ConfigFile, Overrides, PresetConfig};
use crate::error::CliError;
use crate::parse::parse_poly_expr;
use crate::report::{element_json, VerificationReport};

/// Number of seeded pairs for the star-product checks of `verify`.
pub const STAR_PAIRS: usize = 50;

#[derive(Debug, Parser)]
#[command(name = "qtwist", version, about = "Exact verification of twisted quasi-Hopf structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Args)]
pub struct Common {
    /// Preset name: classical, moyal or rflux.
    #[arg(long)]
    pub preset: Option<String>,
    /// JSON config file; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Truncation order N (computations modulo ℏ^{N+1}).
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Include per-check wall-clock milliseconds (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckGroup {
    Axioms,
    Quasitriangular,
    Star,
    Hom,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShowItem {
    Coproduct,
    Associator,
    Rmatrix,
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Closed,
    Bimodule,
    Tensor,
    Gamma,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Axioms, quasitriangularity, star-product and internal-hom checks.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated groups; defaults to axioms,quasitriangular,star.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckGroup>,
    },
    /// Prints the twisted structure data.
    Twist {
        #[command(flatten)]
        common: Common,
        /// Comma-separated items; defaults to all.
        #[arg(long, value_delimiter = ',')]
        show: Vec<ShowItem>,
    },
    /// Star product of two polynomials.
    Star {
        #[command(flatten)]
        common: Common,
        #[arg(long = "expr", required = true)]
        exprs: Vec<String>,
    },
    /// Weak-associativity residual and plain associativity defect of a triple.
    Assoc {
        #[command(flatten)]
        common: Common,
        #[arg(long = "expr", required = true)]
        exprs: Vec<String>,
    },
    /// Internal-hom property suites.
    Hom {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteName,
        /// Samples per identity and configuration.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

fn resolve(common: &Common) -> Result<(PresetConfig, Preset), CliError> {
    let file = match &common.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let over = Overrides { preset: common.preset.clone(), order: common.order, seed: common.seed };
    let cfg = PresetConfig::resolve(&file, &over)?;
    let preset = cfg.build()?;
    Ok((cfg, preset))
}

fn report(command: &str, cfg: &PresetConfig, checks: Vec<Report>, data: Option<Value>) -> VerificationReport {
    VerificationReport {
        command: command.into(),
        preset: cfg.name().as_str().into(),
        order: cfg.order,
        seed: cfg.seed,
        checks,
        data,
    }
}

fn parse_all(exprs: &[String], count: usize, alg: &AlgebraObject) -> Result<Vec<PolyFunction>, CliError> {
    if exprs.len() != count {
        return Err(CliError::Usage(format!("expected exactly {count} --expr arguments, got {}", exprs.len())));
    }
    exprs.iter().map(|e| Ok(parse_poly_expr(e, alg.coordinates(), alg.order())?)).collect()
}

/// Runs one parsed command; `Err` means a usage or config problem.
pub fn execute(command: &Command) -> Result<(VerificationReport, bool), CliError> {
    match command {
        Command::Verify { common, checks } => Ok((verify(common, checks)?, common.timing)),
        Command::Twist { common, show } => Ok((twist(common, show)?, common.timing)),
        Command::Star { common, exprs } => Ok((star(common, exprs)?, common.timing)),
        Command::Assoc { common, exprs } => Ok((assoc(common, exprs)?, common.timing)),
        Command::Hom { common, suite, samples } => Ok((hom(common, *suite, *samples)?, common.timing)),
    }
}

fn verify(common: &Common, groups: &[CheckGroup]) -> Result<VerificationReport, CliError> {
    let (cfg, preset) = resolve(common)?;
    let groups: Vec<CheckGroup> = if groups.is_empty() {
        vec![CheckGroup::Axioms, CheckGroup::Quasitriangular, CheckGroup::Star]
    } else if groups.contains(&CheckGroup::All) {
        vec![CheckGroup::Axioms, CheckGroup::Quasitriangular, CheckGroup::Star, CheckGroup::Hom]
    } else {
        groups.to_vec()
    };
    let hf = preset.twisted()?;
    let opts = CheckOptions::default();
    let mut checks = Vec::new();
    if groups.contains(&CheckGroup::Axioms) {
        checks.push(check_quasibialgebra(&hf, opts));
        checks.push(check_quasiantipode(&hf, opts));
    }
    if groups.contains(&CheckGroup::Quasitriangular) {
        checks.push(check_quasitriangular(&hf, opts)?);
        checks.push(check_triangular(&hf)?);
    }
    if groups.contains(&CheckGroup::Star) {
        checks.extend(star_checks(&preset, &cfg)?);
    }
    if groups.contains(&CheckGroup::Hom) {
        let suite = HomSuite::new(&cfg.params, cfg.order)?;
        checks.extend(suite.run_all(&SuiteConfig { samples: SuiteConfig::default().samples, seed: cfg.seed }));
    }
    Ok(report("verify", &cfg, checks, None))
}

/// Star-product checks on seeded pairs and on all coordinate-monomial
/// triples of total degree at most `degree_bound + 1`.
fn star_checks(preset: &Preset, cfg: &PresetConfig) -> Result<Vec<Report>, CliError> {
    let alg = AlgebraObject::twisted(preset)?;
    let mut s = Sampler::new(cfg.seed, alg.nvars(), alg.order());
    let pairs = s.pairs(STAR_PAIRS, cfg.degree_bound);
    let gens: Vec<_> = (0..alg.hopf().lie().len()).map(|g| alg.hopf().generator(g as u16)).collect();
    let coords: Vec<usize> = (0..alg.nvars()).collect();
    let triples = monomial_triples(alg.nvars(), alg.order(), &coords, cfg.degree_bound + 1);
    let mut out = vec![
        alg.check_classical_limit(&pairs),
        alg.check_equivariance(&gens, &pairs[..5]),
        alg.check_counit_compatibility(&gens),
        alg.check_weak_associativity(&triples),
    ];
    if alg.hopf().r_matrix().is_some() {
        out.push(alg.check_braided_commutativity(&pairs)?);
    }
    Ok(out)
}

fn twist(common: &Common, show: &[ShowItem]) -> Result<VerificationReport, CliError> {
    let (cfg, preset) = resolve(common)?;
    let hf = preset.twisted()?;
    let all = [ShowItem::Coproduct, ShowItem::Associator, ShowItem::Rmatrix, ShowItem::Alpha, ShowItem::Beta];
    let items: &[ShowItem] = if show.is_empty() { &all } else { show };
    let mut data = Map::new();
    for item in all.iter().filter(|i| items.contains(i)) {
        let (key, value) = match item {
            ShowItem::Coproduct => {
                let lie = hf.lie();
                let mut per_gen = Map::new();
                for g in 0..lie.len() {
                    let d = hf.delta_monomial(&PbwMonomial::generator(g as u16));
                    per_gen.insert(lie.name(g as u16).to_string(), element_json(&d));
                }
                ("coproduct", Value::Object(per_gen))
            }
            ShowItem::Associator => ("associator", element_json(hf.phi())),
            ShowItem::Rmatrix => ("rmatrix", hf.r_matrix().map(element_json).unwrap_or(Value::Null)),
            ShowItem::Alpha => ("alpha", element_json(hf.alpha())),
            ShowItem::Beta => ("beta", element_json(hf.beta())),
        };
        data.insert(key.into(), value);
    }
    Ok(report("twist", &cfg, Vec::new(), Some(Value::Object(data))))
}

fn star(common: &Common, exprs: &[String]) -> Result<VerificationReport, CliError> {
    let (cfg, preset) = resolve(common)?;
    let alg = AlgebraObject::twisted(&preset)?;
    let ps = parse_all(exprs, 2, &alg)?;
    let names = alg.coordinates();
    let ab = alg.star(&ps[0], &ps[1])?;
    let ba = alg.star(&ps[1], &ps[0])?;
    let data = json!({
        "a": ps[0].render(names),
        "b": ps[1].render(names),
        "star": ab.render(names),
        "commutator": ab.sub(&ba).render(names),
    });
    let checks = vec![alg.check_classical_limit(&[(ps[0].clone(), ps[1].clone())])];
    Ok(report("star", &cfg, checks, Some(data)))
}

fn assoc(common: &Common, exprs: &[String]) -> Result<VerificationReport, CliError> {
    let (cfg, preset) = resolve(common)?;
    let alg = AlgebraObject::twisted(&preset)?;
    let ps = parse_all(exprs, 3, &alg)?;
    let names = alg.coordinates();
    let start = std::time::Instant::now();
    let (weak, plain) = alg.weak_assoc_defect(&ps[0], &ps[1], &ps[2])?;
    let residual = weak.first_term(names).map(|t| format!("weak associativity: {t}"));
    let checks = vec![Report::new("weak associativity", ANCHOR_WEAK_ASSOCIATIVITY, residual, start.elapsed())];
    let data = json!({
        "weak_residual": weak.render(names),
        "plain_defect": plain.render(names),
    });
    Ok(report("assoc", &cfg, checks, Some(data)))
}

fn hom(common: &Common, suite_name: SuiteName, samples: usize) -> Result<VerificationReport, CliError> {
    let (cfg, _) = resolve(common)?;
    let suite = HomSuite::new(&cfg.params, cfg.order)?;
    let sc = SuiteConfig { samples, seed: cfg.seed };
    let mut checks = Vec::new();
    for big in [1, 2] {
        match suite_name {
            SuiteName::Closed => checks.extend(suite.run_closed_structure(&sc, big)),
            SuiteName::Bimodule => checks.extend(suite.run_bimodule(&sc, big)),
            SuiteName::Tensor => checks.extend(suite.run_tensor(&sc, big)),
            SuiteName::Gamma => checks.extend(suite.run_gamma(&sc, big)),
            SuiteName::All => {}
        }
    }
    if suite_name == SuiteName::All {
        checks = suite.run_all(&sc);
    }
    Ok(report("hom", &cfg, checks, None))
}
