//! Versioned, deterministic JSON reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classifier::{Config, VennPlacement, Verdict};
use crate::witnesses::{ACFailureWitness, AdversaryLedger, SetAWitness, Theorem2Ledger};

/// Bumped whenever the report layout changes.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub placements: Vec<PlacementReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub criteria: Vec<CriterionOutcome>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlacementReport {
    pub function: String,
    pub venn: String,
    pub verdicts: Vec<Verdict>,
}

impl From<&VennPlacement> for PlacementReport {
    fn from(p: &VennPlacement) -> Self {
        PlacementReport {
            function: p.function.to_string(),
            venn: p.summary(),
            verdicts: p.verdicts.values().cloned().collect(),
        }
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessLedger {
    AcFailure(ACFailureWitness),
    Theorem1(AdversaryLedger),
    Theorem2(Theorem2Ledger),
    SetA(SetAWitness),
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub verified: bool,
    pub failures: Vec<String>,
    pub ledger: WitnessLedger,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Report {
    pub fn new(command: &str, config: &Config) -> Self {
        let mut parameters = BTreeMap::new();
        parameters.insert("depth".to_string(), config.depth.to_string());
        parameters.insert("max_doubling".to_string(), config.max_doubling.to_string());
        Report {
            format_version: FORMAT_VERSION,
            tool: env!("CARGO_PKG_NAME"),
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            parameters,
            placements: Vec::new(),
            witness: None,
            criteria: Vec::new(),
        }
    }

    pub fn with_parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify;
    use crate::functions::FunctionSpec;

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let render = || {
            let config = Config::default();
            let mut r = Report::new("classify", &config);
            let p = classify(&FunctionSpec::f2(), &config).unwrap();
            r.placements.push(PlacementReport::from(&p));
            r.to_json()
        };
        let a = render();
        assert_eq!(a, render());
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["format_version"], 1);
        assert_eq!(v["placements"][0]["function"], FunctionSpec::f2().to_string());
        assert_eq!(v["placements"][0]["verdicts"].as_array().unwrap().len(), 7);
    }
}
