use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::taxonomy::{FinalLevel, Principle, RubricBand, SystemCategory};
use super::validate::{Validate, Violation};

pub const RUBRIC_MAX: u8 = 5;

impl RubricBand {
    /// Band of a rubric value, `None` outside 0..=5.
    pub fn from_value(value: i64) -> Option<RubricBand> {
        match value {
            0 => Some(RubricBand::NotDisclosed),
            1 => Some(RubricBand::Minimal),
            2..=4 => Some(RubricBand::Moderate),
            5 => Some(RubricBand::Comprehensive),
            _ => None,
        }
    }
}

/// One sub-question answer on the 0..=5 disclosure rubric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RubricScore {
    pub value: u8,
    pub band: RubricBand,
    #[serde(default)]
    pub evidence: String,
}

impl RubricScore {
    /// Build a score with its derived band. Fails outside 0..=5.
    pub fn new(value: i64, evidence: impl Into<String>) -> Option<Self> {
        let band = RubricBand::from_value(value)?;
        Some(Self {
            value: value as u8,
            band,
            evidence: evidence.into(),
        })
    }
}

impl Validate for RubricScore {
    fn validate(&self) -> Vec<Violation> {
        match RubricBand::from_value(i64::from(self.value)) {
            None => vec![Violation::new(
                "rubric.range",
                "value",
                format!("rubric values run from 0 to 5, got {}", self.value),
            )],
            Some(band) if band != self.band => vec![Violation::new(
                "rubric.band",
                "band",
                format!(
                    "value {} belongs to band `{}`, not `{}`",
                    self.value,
                    band.as_str(),
                    self.band.as_str()
                ),
            )],
            Some(_) => Vec::new(),
        }
    }
}

/// Outcome for one principle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrincipleResult {
    pub average: f64,
    pub answered: usize,
    pub suggested_level: FinalLevel,
    pub final_level: FinalLevel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub override_note: Option<String>,
}

impl PrincipleResult {
    pub fn is_overridden(&self) -> bool {
        self.final_level != self.suggested_level
    }
}

/// Deep-dive assessment of one company against one bank version.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeepDiveAssessment {
    pub company: String,
    pub bank_version: String,
    /// System category the question selection was made for, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system_category: Option<SystemCategory>,
    #[serde(default)]
    pub answers: BTreeMap<String, RubricScore>,
    /// Guide metrics the company publicly discloses.
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub disclosed_metrics: BTreeSet<String>,
    /// Only principles with at least one answer carry a result.
    #[serde(default)]
    pub principle_results: BTreeMap<Principle, PrincipleResult>,
}

impl DeepDiveAssessment {
    pub fn new(company: impl Into<String>, bank_version: impl Into<String>) -> Self {
        Self {
            company: company.into(),
            bank_version: bank_version.into(),
            system_category: None,
            answers: BTreeMap::new(),
            disclosed_metrics: BTreeSet::new(),
            principle_results: BTreeMap::new(),
        }
    }
}

impl Validate for DeepDiveAssessment {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (id, score) in &self.answers {
            out.extend(
                score
                    .validate()
                    .into_iter()
                    .map(|v| v.nested(&format!("answers.{id}"))),
            );
        }
        for (principle, result) in &self.principle_results {
            let path = format!("principle_results.{}", principle.as_str());
            if result.answered == 0 {
                out.push(Violation::new(
                    "principle.no_answers",
                    format!("{path}.answered"),
                    "a principle without answers cannot carry a result",
                ));
            }
            if result.is_overridden()
                && result
                    .override_note
                    .as_deref()
                    .is_none_or(|n| n.trim().is_empty())
            {
                out.push(Violation::new(
                    "override.note.required",
                    format!("{path}.override_note"),
                    "a final level that differs from the suggested level needs a note",
                ));
            }
        }
        out
    }
}
