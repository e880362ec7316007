//! Deep-dive question banks: the file format, loading with full validation,
//! and the bundled seed data.
//!
//! A bank is a single JSON document tagged `"schema": "esgai.bank/v1"`.
//! Banks that declare `"completeness": "complete"` must also satisfy the
//! published size rules (42 sub-questions, 43 guide metrics, 8 key
//! questions, 27 indicators, and the high-risk / foundation-model obligation
//! split). Sample banks only have to be internally consistent.

mod catalog;
mod query;
mod seed;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::model::{
    EsgTopic, MetricDirection, Obligation, OrgType, Principle, Provenance, SystemCategory,
    Violation,
};

pub use catalog::BankCatalog;
pub use query::{
    bank_stats, filter_questions, filter_summary, mapping_matrix, provenance_stats,
    round_half_up_percent, BankStats, FilterCriteria, FilterError, FilterSummary, MappingMatrix,
    ObligationSplit, ProvenanceCounts, ProvenanceShares, ProvenanceStats, SelectedQuestion,
};
pub use seed::{builtin_bank, builtin_bank_versions, complete_bank, sample_bank, seed_use_cases};

pub const BANK_SCHEMA: &str = "esgai.bank/v1";

/// Ids of the six guide metrics that regulation makes mandatory for
/// high-risk AI and foundation models.
pub const MANDATORY_METRIC_IDS: [&str; 6] = [
    "energy-usage",
    "ghg-emission",
    "waste-generated-saved",
    "ai-system-performance",
    "model-size",
    "training-time",
];

pub const COMPLETE_SUB_QUESTIONS: usize = 42;
pub const COMPLETE_METRICS: usize = 43;
pub const COMPLETE_KEY_QUESTIONS: usize = 8;
pub const COMPLETE_INDICATORS: usize = 27;
/// (mandatory, optional) question counts per system category in a complete bank.
pub const COMPLETE_HIGH_RISK_SPLIT: (usize, usize) = (17, 5);
pub const COMPLETE_FOUNDATION_MODEL_SPLIT: (usize, usize) = (13, 8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    Sample,
    Complete,
}

/// Principle-level lead question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyQuestion {
    pub id: String,
    pub principle: Principle,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubQuestion {
    pub id: String,
    pub principle: Principle,
    pub indicator: String,
    pub key_question_id: String,
    pub text: String,
    #[serde(default)]
    pub esg_topics: BTreeSet<EsgTopic>,
    /// Empty means the question applies to every organisation type.
    #[serde(default)]
    pub org_types: BTreeSet<OrgType>,
    /// Empty means the question applies to every system category.
    #[serde(default)]
    pub system_categories: BTreeSet<SystemCategory>,
    #[serde(default)]
    pub obligation: BTreeMap<SystemCategory, Obligation>,
    #[serde(default)]
    pub provenance: BTreeSet<Provenance>,
    #[serde(default)]
    pub metrics: Vec<String>,
    /// True when the wording is invented rather than published.
    #[serde(default)]
    pub synthetic: bool,
}

impl SubQuestion {
    pub fn applies_to_category(&self, category: SystemCategory) -> bool {
        self.system_categories.is_empty() || self.system_categories.contains(&category)
    }

    pub fn applies_to_org(&self, org: OrgType) -> bool {
        self.org_types.is_empty()
            || org
                .matching_tags()
                .iter()
                .any(|t| self.org_types.contains(t))
    }

    /// Obligation of the question for a category it applies to. Categories
    /// that carry obligations default to optional.
    pub fn obligation_for(&self, category: SystemCategory) -> Option<Obligation> {
        if !self.applies_to_category(category) {
            return None;
        }
        self.obligation.get(&category).copied().or(match category {
            SystemCategory::HighRisk | SystemCategory::FoundationModel => {
                Some(Obligation::Optional)
            }
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GuideMetric {
    pub id: String,
    pub name: String,
    /// Description and measurement guide.
    #[serde(default)]
    pub description: String,
    pub direction: MetricDirection,
    #[serde(default)]
    pub mandatory_for: BTreeSet<SystemCategory>,
}

/// A validated question bank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BankManifest {
    pub schema: String,
    pub version: String,
    pub completeness: Completeness,
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub description: String,
    pub key_questions: Vec<KeyQuestion>,
    pub questions: Vec<SubQuestion>,
    pub metrics: Vec<GuideMetric>,
}

/// Every problem found while loading a bank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BankError {
    pub issues: Vec<Violation>,
}

impl BankError {
    /// Code of the first issue, used for exit-code and HTTP mapping.
    pub fn code(&self) -> &str {
        self.issues
            .first()
            .map_or("bank.invalid", |v| v.code.as_str())
    }

    fn single(code: &str, path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            issues: vec![Violation::new(code, path, message)],
        }
    }
}

impl fmt::Display for BankError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "question bank is invalid ({} issue(s))",
            self.issues.len()
        )?;
        for issue in &self.issues {
            write!(f, "\n  {issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for BankError {}

/// Parse and fully validate a bank document.
pub fn load_bank(source: &str) -> Result<BankManifest, BankError> {
    let de = &mut serde_json::Deserializer::from_str(source);
    let bank: BankManifest = serde_path_to_error::deserialize(de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        BankError::single(
            "bank.schema",
            path,
            format!("line {} column {}: {inner}", inner.line(), inner.column()),
        )
    })?;
    let issues = bank.check();
    if issues.is_empty() {
        Ok(bank)
    } else {
        Err(BankError { issues })
    }
}

pub fn load_bank_file(path: &Path) -> Result<BankManifest, BankError> {
    let source = std::fs::read_to_string(path)
        .map_err(|err| BankError::single("bank.io", path.display().to_string(), err.to_string()))?;
    load_bank(&source)
}

fn duplicates<'a>(
    ids: impl Iterator<Item = &'a str>,
    collection: &str,
    out: &mut Vec<Violation>,
) -> BTreeSet<&'a str> {
    let mut seen = BTreeSet::new();
    for (i, id) in ids.enumerate() {
        if id.trim().is_empty() {
            out.push(Violation::new(
                "bank.empty_id",
                format!("{collection}[{i}].id"),
                "id must not be empty",
            ));
        } else if !seen.insert(id) {
            out.push(Violation::new(
                "bank.duplicate_id",
                format!("{collection}[{i}].id"),
                format!("id `{id}` is used more than once"),
            ));
        }
    }
    seen
}

impl BankManifest {
    /// Canonical JSON encoding.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bank serialization is infallible")
    }

    pub fn question(&self, id: &str) -> Option<&SubQuestion> {
        self.questions.iter().find(|q| q.id == id)
    }

    pub fn metric(&self, id: &str) -> Option<&GuideMetric> {
        self.metrics.iter().find(|m| m.id == id)
    }

    pub fn key_question(&self, principle: Principle) -> Option<&KeyQuestion> {
        self.key_questions.iter().find(|k| k.principle == principle)
    }

    pub fn indicators(&self) -> BTreeSet<&str> {
        self.questions
            .iter()
            .map(|q| q.indicator.as_str())
            .collect()
    }

    /// (mandatory, optional) question counts when selecting `category`.
    pub fn obligation_split(&self, category: SystemCategory) -> (usize, usize) {
        self.questions
            .iter()
            .filter_map(|q| q.obligation_for(category))
            .fold((0, 0), |(m, o), ob| match ob {
                Obligation::Mandatory => (m + 1, o),
                Obligation::Optional => (m, o + 1),
            })
    }

    /// All invariant checks, in document order.
    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.schema != BANK_SCHEMA {
            out.push(Violation::new(
                "bank.schema_version",
                "schema",
                format!("expected `{BANK_SCHEMA}`, got `{}`", self.schema),
            ));
        }
        if self.version.trim().is_empty() {
            out.push(Violation::new(
                "bank.version",
                "version",
                "version must not be empty",
            ));
        }

        duplicates(
            self.key_questions.iter().map(|k| k.id.as_str()),
            "key_questions",
            &mut out,
        );
        duplicates(
            self.questions.iter().map(|q| q.id.as_str()),
            "questions",
            &mut out,
        );
        let metric_ids = duplicates(
            self.metrics.iter().map(|m| m.id.as_str()),
            "metrics",
            &mut out,
        );

        for (i, k) in self.key_questions.iter().enumerate() {
            if k.text.trim().is_empty() {
                out.push(Violation::new(
                    "bank.empty_text",
                    format!("key_questions[{i}].text"),
                    "text must not be empty",
                ));
            }
        }

        for (i, q) in self.questions.iter().enumerate() {
            let path = format!("questions[{i}]");
            if q.text.trim().is_empty() {
                out.push(Violation::new(
                    "bank.empty_text",
                    format!("{path}.text"),
                    "text must not be empty",
                ));
            }
            if q.indicator.trim().is_empty() {
                out.push(Violation::new(
                    "bank.empty_text",
                    format!("{path}.indicator"),
                    "indicator must not be empty",
                ));
            }
            match self
                .key_questions
                .iter()
                .find(|k| k.id == q.key_question_id)
            {
                None => out.push(Violation::new(
                    "bank.dangling_reference",
                    format!("{path}.key_question_id"),
                    format!("key question `{}` does not exist", q.key_question_id),
                )),
                Some(k) if k.principle != q.principle => out.push(Violation::new(
                    "bank.principle_mismatch",
                    format!("{path}.key_question_id"),
                    format!(
                        "key question `{}` belongs to {}, the sub-question to {}",
                        k.id,
                        k.principle.as_str(),
                        q.principle.as_str()
                    ),
                )),
                Some(_) => {}
            }
            for (j, m) in q.metrics.iter().enumerate() {
                if !metric_ids.contains(m.as_str()) {
                    out.push(Violation::new(
                        "bank.dangling_reference",
                        format!("{path}.metrics[{j}]"),
                        format!("guide metric `{m}` does not exist"),
                    ));
                }
            }
            for category in q.obligation.keys() {
                let carries = matches!(
                    category,
                    SystemCategory::HighRisk | SystemCategory::FoundationModel
                );
                if !carries || !q.applies_to_category(*category) {
                    out.push(Violation::new(
                        "bank.obligation_category",
                        format!("{path}.obligation.{}", category.as_str()),
                        format!(
                            "obligations apply only to high_risk and foundation_model categories the question is tagged with, got `{}`",
                            category.as_str()
                        ),
                    ));
                }
            }
        }

        for (i, m) in self.metrics.iter().enumerate() {
            if m.name.trim().is_empty() {
                out.push(Violation::new(
                    "bank.empty_text",
                    format!("metrics[{i}].name"),
                    "name must not be empty",
                ));
            }
            if MANDATORY_METRIC_IDS.contains(&m.id.as_str()) && m.mandatory_for.is_empty() {
                out.push(Violation::new(
                    "bank.metric.mandatory_for",
                    format!("metrics[{i}].mandatory_for"),
                    format!(
                        "mandatory metric `{}` must name the categories it is mandatory for",
                        m.id
                    ),
                ));
            }
        }

        if self.completeness == Completeness::Complete {
            self.check_complete(&mut out);
        }
        out
    }

    fn check_complete(&self, out: &mut Vec<Violation>) {
        let mut count = |code: &str, path: &str, what: &str, got: usize, want: usize| {
            if got != want {
                out.push(Violation::new(
                    code,
                    path,
                    format!("a complete bank has exactly {want} {what}, found {got}"),
                ));
            }
        };
        count(
            "bank.count.sub_questions",
            "questions",
            "sub-questions",
            self.questions.len(),
            COMPLETE_SUB_QUESTIONS,
        );
        count(
            "bank.count.metrics",
            "metrics",
            "guide metrics",
            self.metrics.len(),
            COMPLETE_METRICS,
        );
        count(
            "bank.count.key_questions",
            "key_questions",
            "key questions",
            self.key_questions.len(),
            COMPLETE_KEY_QUESTIONS,
        );
        count(
            "bank.count.indicators",
            "questions",
            "distinct indicators",
            self.indicators().len(),
            COMPLETE_INDICATORS,
        );

        for (category, expected, code) in [
            (
                SystemCategory::HighRisk,
                COMPLETE_HIGH_RISK_SPLIT,
                "bank.count.high_risk",
            ),
            (
                SystemCategory::FoundationModel,
                COMPLETE_FOUNDATION_MODEL_SPLIT,
                "bank.count.foundation_model",
            ),
        ] {
            let got = self.obligation_split(category);
            if got != expected {
                out.push(Violation::new(
                    code,
                    "questions",
                    format!(
                        "{} selection must yield {} mandatory + {} optional questions, found {} + {}",
                        category.as_str(),
                        expected.0,
                        expected.1,
                        got.0,
                        got.1
                    ),
                ));
            }
        }

        for principle in Principle::ALL {
            if self.key_question(*principle).is_none() {
                out.push(Violation::new(
                    "bank.key_question.coverage",
                    "key_questions",
                    format!("no key question for principle {}", principle.as_str()),
                ));
            }
        }
        for id in MANDATORY_METRIC_IDS {
            if self.metric(id).is_none() {
                out.push(Violation::new(
                    "bank.metric.mandatory_missing",
                    "metrics",
                    format!("mandatory guide metric `{id}` is missing"),
                ));
            }
        }
    }
}
