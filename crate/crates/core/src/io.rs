//! JSON instance files and report rendering.
//!
//! Instance file: `{"alphabet":"abc","t":"aabbcc","patterns":["abb"],"kind":"substring"}`.
//! Serialization writes `t` in ascending alphabet order, so canonical files
//! round-trip byte-exactly.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{Alphabet, Instance, Kind, MultisetText, Pattern, SolutionReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub alphabet: String,
    pub t: String,
    pub patterns: Vec<String>,
    pub kind: Kind,
}

impl InstanceFile {
    pub fn to_instance(&self) -> Result<Instance> {
        let alphabet = Alphabet::new(self.alphabet.chars())?;
        let text = MultisetText::from_symbols(&alphabet.encode(&self.t)?, alphabet.len());
        let patterns = self
            .patterns
            .iter()
            .map(|p| Pattern::new(alphabet.encode(p)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance::new(alphabet, text, patterns, self.kind))
    }

    pub fn from_instance(instance: &Instance) -> Self {
        InstanceFile {
            alphabet: instance.alphabet.as_string(),
            t: instance.alphabet.decode(&instance.text.sorted_symbols()),
            patterns: (0..instance.patterns.len()).map(|i| instance.pattern_string(i)).collect(),
            kind: instance.kind,
        }
    }
}

pub fn instance_from_json(json: &str) -> Result<Instance> {
    serde_json::from_str::<InstanceFile>(json)?.to_instance()
}

pub fn instance_to_json(instance: &Instance) -> String {
    serde_json::to_string(&InstanceFile::from_instance(instance)).expect("instance file serializes")
}

/// Report as printed by the command line tool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub algorithm: String,
    pub score: usize,
    pub matched: Vec<usize>,
    pub matched_patterns: Vec<String>,
    pub arrangement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proven_optimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_expanded: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
}

impl ReportJson {
    /// `with_timing` controls whether the wall-clock time is included.
    pub fn new(instance: &Instance, report: &SolutionReport, with_timing: bool) -> Self {
        ReportJson {
            algorithm: report.algorithm.clone(),
            score: report.score,
            matched: report.matched.clone(),
            matched_patterns: report.matched.iter().map(|&i| instance.pattern_string(i)).collect(),
            arrangement: instance.alphabet.decode(&report.arrangement.symbols),
            seed: report.seed,
            elapsed_ms: with_timing.then_some(report.elapsed.as_secs_f64() * 1e3),
            proven_optimal: None,
            nodes_expanded: None,
            mean: None,
            std_error: None,
        }
    }
}
