//! Preset configuration: JSON files such as
//! `{"preset": "rflux", "n": 3, "R": [[[...]]], "order": 3, "seed": 42,
//! "degree_bound": 2}`, merged with command-line overrides.
//!
//! Scalars are exact: an integer, a `"p/q"` string, or `{"re": .., "im": ..}`
//! with either form for each part. Floats are rejected.

use std::path::Path;

use qtwist_core::{BigRational, GaussianRational};
use qtwist_hopf::{levi_civita, preset, standard_theta, Preset, PresetName, PresetParams};
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

pub const DEFAULT_ORDER: usize = 3;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_DEGREE_BOUND: u32 = 2;

/// The file format; every field is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub preset: Option<String>,
    pub n: Option<usize>,
    #[serde(rename = "R")]
    pub r: Option<Value>,
    pub theta: Option<Value>,
    pub order: Option<usize>,
    pub seed: Option<u64>,
    pub degree_bound: Option<u32>,
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }
}

/// A validated configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresetConfig {
    pub params: PresetParams,
    pub order: usize,
    pub seed: u64,
    pub degree_bound: u32,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub preset: Option<String>,
    pub order: Option<usize>,
    pub seed: Option<u64>,
}

fn rational(v: &Value) -> Result<BigRational, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|k| BigRational::from_integer(k.into()))
            .ok_or_else(|| CliError::Config(format!("{n} is not an integer; write fractions as \"p/q\""))),
        Value::String(s) => s.trim().parse().map_err(|_| CliError::Config(format!("{s:?} is not a rational \"p/q\""))),
        other => Err(CliError::Config(format!("expected a rational, got {other}"))),
    }
}

/// An exact scalar in any of the accepted encodings.
pub fn scalar(v: &Value) -> Result<GaussianRational, CliError> {
    match v {
        Value::Object(m) => {
            if let Some(k) = m.keys().find(|k| *k != "re" && *k != "im") {
                return Err(CliError::Config(format!("unexpected key {k:?} in a Gaussian rational")));
            }
            let part = |k: &str| m.get(k).map(rational).unwrap_or_else(|| Ok(BigRational::from_integer(0.into())));
            Ok(GaussianRational::new(part("re")?, part("im")?))
        }
        _ => Ok(GaussianRational::from_real(rational(v)?)),
    }
}

fn array<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| CliError::Config(format!("{what} must be an array")))
}

fn matrix(v: &Value) -> Result<Vec<Vec<GaussianRational>>, CliError> {
    array(v, "theta")?.iter().map(|row| array(row, "theta row")?.iter().map(scalar).collect()).collect()
}

fn tensor3(v: &Value) -> Result<Vec<Vec<Vec<GaussianRational>>>, CliError> {
    array(v, "R")?
        .iter()
        .map(|slab| array(slab, "R slab")?.iter().map(|row| array(row, "R row")?.iter().map(scalar).collect()).collect())
        .collect()
}

impl PresetConfig {
    /// Merges file and overrides; shape and symmetry of Θ and `R` are
    /// validated by [`Self::build`].
    pub fn resolve(file: &ConfigFile, over: &Overrides) -> Result<Self, CliError> {
        let name_text = over
            .preset
            .clone()
            .or_else(|| file.preset.clone())
            .ok_or_else(|| CliError::Usage("no preset given (use --preset or a config file)".into()))?;
        let name: PresetName = name_text.parse()?;
        let params = match name {
            PresetName::Classical => PresetParams::Classical { dim: file.n.unwrap_or(2) },
            PresetName::Moyal => PresetParams::Moyal {
                theta: match &file.theta {
                    Some(t) => matrix(t)?,
                    None => standard_theta(file.n.unwrap_or(2)),
                },
            },
            PresetName::Rflux => PresetParams::Rflux {
                r: match &file.r {
                    Some(r) => tensor3(r)?,
                    None => levi_civita(file.n.unwrap_or(3)),
                },
            },
        };
        if let (Some(n), PresetParams::Moyal { theta }) = (file.n, &params) {
            if theta.len() != n {
                return Err(CliError::Config(format!("n = {n} but theta is {}×{}", theta.len(), theta.len())));
            }
        }
        if let (Some(n), PresetParams::Rflux { r }) = (file.n, &params) {
            if r.len() != n {
                return Err(CliError::Config(format!("n = {n} but R has {} slabs", r.len())));
            }
        }
        Ok(Self {
            params,
            order: over.order.or(file.order).unwrap_or(DEFAULT_ORDER),
            seed: over.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            degree_bound: file.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND),
        })
    }

    pub fn name(&self) -> PresetName {
        self.params.name()
    }

    pub fn build(&self) -> Result<Preset, CliError> {
        Ok(preset(&self.params, self.order)?)
    }
}
