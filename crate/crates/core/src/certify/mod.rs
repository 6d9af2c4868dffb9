//! Machine-checkable certificates for edge-primitivity, s-arc-transitivity,
//! local structure and the normal-subgroup lemmas.

mod checks;
mod lemmas;
pub mod suite;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::graph::MAX_S;
use crate::group::{DEFAULT_ENUMERATION_CUTOFF, DEFAULT_NORMAL_SWEEP_CUTOFF};

pub use checks::arc_transitive;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ScaleLimit,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ScaleLimit => "scale-limit",
            Verdict::NotApplicable => "not-applicable",
        }
    }

    /// Pass and not-applicable count as success.
    pub fn is_success(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::NotApplicable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub enumeration_cutoff: u64,
    pub s_cap: usize,
    pub normal_sweep_cutoff: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            enumeration_cutoff: DEFAULT_ENUMERATION_CUTOFF,
            s_cap: MAX_S,
            normal_sweep_cutoff: DEFAULT_NORMAL_SWEEP_CUTOFF,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub check_name: String,
    pub inputs: Vec<String>,
    pub verdict: Verdict,
    /// Failed assertion, violated hypothesis or exceeded limit.
    pub reason: Option<String>,
    pub evidence: BTreeMap<String, Value>,
    pub tool_version: String,
    pub config: CheckConfig,
}

impl Certificate {
    pub fn get(&self, key: &str) -> Option<&Value> {
        self.evidence.get(key)
    }

    pub fn get_u64(&self, key: &str) -> Option<u64> {
        self.evidence.get(key).and_then(Value::as_u64)
    }

    pub fn get_bool(&self, key: &str) -> Option<bool> {
        self.evidence.get(key).and_then(Value::as_bool)
    }
}

pub(crate) enum Outcome {
    Pass,
    Fail(String),
    NotApplicable(String),
    ScaleLimit(String),
}

#[derive(Default)]
pub(crate) struct Evidence(BTreeMap<String, Value>);

impl Evidence {
    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.0.insert(key.to_string(), value.into());
    }

    pub fn order(&mut self, key: &str, value: &BigUint) {
        self.0.insert(key.to_string(), big(value));
    }

    pub fn nest(&mut self, key: &str, inner: Evidence, outcome: &Outcome) {
        let mut map: serde_json::Map<String, Value> = inner.0.into_iter().collect();
        let (verdict, reason) = describe(outcome);
        map.insert("verdict".into(), verdict.as_str().into());
        if let Some(r) = reason {
            map.insert("reason".into(), r.into());
        }
        self.0.insert(key.to_string(), Value::Object(map));
    }
}

fn describe(outcome: &Outcome) -> (Verdict, Option<String>) {
    match outcome {
        Outcome::Pass => (Verdict::Pass, None),
        Outcome::Fail(r) => (Verdict::Fail, Some(r.clone())),
        Outcome::NotApplicable(r) => (Verdict::NotApplicable, Some(r.clone())),
        Outcome::ScaleLimit(r) => (Verdict::ScaleLimit, Some(r.clone())),
    }
}

/// Orders as JSON integers when they fit, decimal strings otherwise.
pub(crate) fn big(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => Value::from(x),
        None => Value::from(v.to_string()),
    }
}

/// Runs checks under a fixed configuration, labelling certificates with
/// the given input references.
#[derive(Clone, Debug, Default)]
pub struct Checker {
    pub config: CheckConfig,
    pub inputs: Vec<String>,
}

impl Checker {
    pub fn new(config: CheckConfig, inputs: Vec<String>) -> Checker {
        Checker { config, inputs }
    }

    /// Scale-limit errors become scale-limit certificates; other errors
    /// propagate.
    pub(crate) fn run<F>(&self, name: &str, f: F) -> Result<Certificate>
    where
        F: FnOnce(&mut Evidence) -> Result<Outcome>,
    {
        let mut ev = Evidence::default();
        let outcome = match f(&mut ev) {
            Ok(o) => o,
            Err(e) if e.is_scale_limit() => Outcome::ScaleLimit(e.to_string()),
            Err(e) => return Err(e),
        };
        let (verdict, reason) = describe(&outcome);
        Ok(Certificate {
            schema_version: SCHEMA_VERSION,
            check_name: name.to_string(),
            inputs: self.inputs.clone(),
            verdict,
            reason,
            evidence: ev.0,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config: self.config.clone(),
        })
    }

    /// Evaluates a sub-check into `key` of `ev`, converting scale limits
    /// into an outcome.
    pub(crate) fn nested<F>(&self, ev: &mut Evidence, key: &str, f: F) -> Result<Outcome>
    where
        F: FnOnce(&mut Evidence) -> Result<Outcome>,
    {
        let mut inner = Evidence::default();
        let outcome = match f(&mut inner) {
            Ok(o) => o,
            Err(e) if e.is_scale_limit() => Outcome::ScaleLimit(e.to_string()),
            Err(e) => return Err(e),
        };
        ev.nest(key, inner, &outcome);
        Ok(outcome)
    }
}
