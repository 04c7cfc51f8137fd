//! The JSON report document and exact encodings of scalars and elements.
//!
//! Field order is fixed and checks are sorted by name, so identical inputs
//! give byte-identical documents. Wall-clock times are included only on
//! request, since they would break that.

use qtwist_core::{BigRational, GaussianRational, HbarPoly, TensorElement};
use qtwist_hopf::Report;
use serde::Serialize;
use serde_json::{json, Value};

/// A command's checks plus optional computed data.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub command: String,
    pub preset: String,
    pub order: usize,
    pub seed: u64,
    pub checks: Vec<Report>,
    pub data: Option<Value>,
}

#[derive(Serialize)]
struct CheckDoc<'a> {
    name: &'a str,
    anchor: &'a str,
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ms: Option<u64>,
}

#[derive(Serialize)]
struct Doc<'a> {
    overall: &'a str,
    command: &'a str,
    preset: &'a str,
    order: usize,
    seed: u64,
    checks: Vec<CheckDoc<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<&'a Value>,
}

impl VerificationReport {
    /// Passes iff every check passes; an empty check list passes.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Report::passed)
    }

    /// Pretty-printed JSON; `timing` adds each check's `ms`.
    pub fn to_json(&self, timing: bool) -> String {
        let mut checks: Vec<&Report> = self.checks.iter().collect();
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let doc = Doc {
            overall: if self.passed() { "pass" } else { "fail" },
            command: &self.command,
            preset: &self.preset,
            order: self.order,
            seed: self.seed,
            checks: checks
                .into_iter()
                .map(|r| CheckDoc {
                    name: &r.name,
                    anchor: &r.anchor,
                    status: r.status.as_str(),
                    residual: r.residual.as_deref(),
                    ms: timing.then(|| r.elapsed.as_millis() as u64),
                })
                .collect(),
            data: self.data.as_ref(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }
}

fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

/// `{"re": "p/q", "im": "p/q"}`.
pub fn scalar_json(c: &GaussianRational) -> Value {
    json!({ "re": rational(&c.re), "im": rational(&c.im) })
}

/// The nonzero coefficients of a series, as `[{"hbar": k, "re", "im"}]`.
pub fn series_json(s: &HbarPoly) -> Value {
    Value::Array(
        s.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!({ "hbar": k, "re": rational(&c.re), "im": rational(&c.im) }))
            .collect(),
    )
}

/// A tensor element as readable text plus its exact terms.
pub fn element_json(x: &TensorElement) -> Value {
    let lie = x.lie();
    let terms: Vec<Value> = x
        .terms()
        .iter()
        .map(|(k, c)| {
            let legs: Vec<String> = k.iter().map(|m| lie.render_monomial(m)).collect();
            json!({ "legs": legs, "coeff": series_json(c) })
        })
        .collect();
    json!({ "text": x.to_string(), "terms": terms })
}
