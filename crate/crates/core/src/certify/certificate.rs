use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::scalars::PrimeField;
use crate::{Error, Result};

pub const SCHEMA: &str = "certificate/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    /// 0 PASS, 1 FAIL, 2 INCONCLUSIVE.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    /// FAIL dominates INCONCLUSIVE, which dominates PASS.
    pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts.into_iter().max().unwrap_or(Verdict::Pass)
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Where a step's conclusion comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// Recomputed by this run.
    Computed,
    /// A published theorem used as a black box.
    Cited,
    /// A uniform bound proved in the literature and not recomputed here.
    PaperUniform,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub name: String,
    pub statement: String,
    pub evidence: Evidence,
    pub inputs: Map<String, Value>,
    pub computed: Map<String, Value>,
    pub comparison: String,
    pub verdict: Verdict,
}

impl Step {
    pub fn new(name: &str, statement: impl Into<String>, evidence: Evidence) -> Self {
        Step {
            name: name.to_string(),
            statement: statement.into(),
            evidence,
            inputs: Map::new(),
            computed: Map::new(),
            comparison: String::new(),
            verdict: Verdict::Pass,
        }
    }

    pub fn input(mut self, key: &str, v: impl Serialize) -> Self {
        self.inputs.insert(
            key.into(),
            serde_json::to_value(v).expect("serializable input"),
        );
        self
    }

    pub fn computed(mut self, key: &str, v: impl Serialize) -> Self {
        self.computed.insert(
            key.into(),
            serde_json::to_value(v).expect("serializable value"),
        );
        self
    }

    pub fn outcome(mut self, comparison: impl Into<String>, verdict: Verdict) -> Self {
        self.comparison = comparison.into();
        self.verdict = verdict;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub field: String,
    pub version: String,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub claim: String,
    /// "complete" or "proof modulo flat-family step" for the rank-15 chain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub steps: Vec<Step>,
    pub caveats: Vec<String>,
    pub verdict: Verdict,
    pub environment: Environment,
}

impl Certificate {
    pub fn new(claim: impl Into<String>, field: &FieldChoice) -> Self {
        Certificate {
            schema: SCHEMA.into(),
            claim: claim.into(),
            label: None,
            steps: Vec::new(),
            caveats: Vec::new(),
            verdict: Verdict::Pass,
            environment: Environment {
                field: field.to_string(),
                version: env!("CARGO_PKG_VERSION").into(),
                timing_ms: 0,
            },
        }
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    /// Applies fault injection and sets the overall verdict.
    pub fn finish(mut self, inject_failure: Option<&str>, elapsed: std::time::Duration) -> Self {
        if let Some(name) = inject_failure {
            for s in self
                .steps
                .iter_mut()
                .filter(|s| s.name == name || name == "*")
            {
                s.verdict = Verdict::Fail;
                s.comparison = format!("{} [failure injected]", s.comparison);
            }
        }
        self.verdict = Verdict::combine(self.steps.iter().map(|s| s.verdict));
        self.environment.timing_ms = elapsed.as_millis() as u64;
        self
    }

    pub fn step(&self, name: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("claim: {}\n", self.claim);
        if let Some(l) = &self.label {
            out += &format!("label: {l}\n");
        }
        for (k, s) in self.steps.iter().enumerate() {
            let ev = match s.evidence {
                Evidence::Computed => "computed",
                Evidence::Cited => "cited",
                Evidence::PaperUniform => "paper-uniform",
            };
            out += &format!("{:>2}. [{}] {} ({ev})\n", k + 1, s.verdict, s.name);
            out += &format!("    {}\n", s.statement);
            for (key, v) in &s.computed {
                out += &format!("    {key} = {}\n", compact(v));
            }
            if !s.comparison.is_empty() {
                out += &format!("    => {}\n", s.comparison);
            }
        }
        for c in &self.caveats {
            out += &format!("caveat: {c}\n");
        }
        out += &format!(
            "verdict: {}  (field {}, version {}, {} ms)\n",
            self.verdict,
            self.environment.field,
            self.environment.version,
            self.environment.timing_ms
        );
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Scalar domain selected for rank computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldChoice {
    #[default]
    Rational,
    Prime(u64),
    Cyclotomic6,
}

impl FromStr for FieldChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" | "q" | "Q" => Ok(FieldChoice::Rational),
            "cyclotomic6" => Ok(FieldChoice::Cyclotomic6),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| {
                        Error::Parse(format!(
                            "unknown field {s:?}; use rational, fp:<p> or cyclotomic6"
                        ))
                    })?;
                PrimeField::new(p)?;
                Ok(FieldChoice::Prime(p))
            }
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rational => f.write_str("rational"),
            FieldChoice::Prime(p) => write!(f, "fp:{p}"),
            FieldChoice::Cyclotomic6 => f.write_str("cyclotomic6"),
        }
    }
}
