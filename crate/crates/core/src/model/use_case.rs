use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::taxonomy::{EsgTopic, ImpactMark, ImpactScope, MaterialityLevel, RegulatoryFlag};
use super::validate::{Validate, Violation};

/// One AI use case under materiality analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UseCaseProfile {
    /// Stable identifier, unique within a session.
    pub id: String,
    pub sector: String,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub regulatory_flag: RegulatoryFlag,
    pub impact_marks: BTreeMap<EsgTopic, ImpactMark>,
    pub impact_scope: ImpactScope,
    /// Computed by the engine; recomputed whenever inputs change.
    #[serde(default)]
    pub materiality_default: MaterialityLevel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub materiality_adjusted: Option<MaterialityLevel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub override_note: Option<String>,
}

impl UseCaseProfile {
    /// A profile with every impact topic marked N/A.
    pub fn new(
        id: impl Into<String>,
        sector: impl Into<String>,
        name: impl Into<String>,
        description: impl Into<String>,
        regulatory_flag: RegulatoryFlag,
        impact_scope: ImpactScope,
    ) -> Self {
        Self {
            id: id.into(),
            sector: sector.into(),
            name: name.into(),
            description: description.into(),
            regulatory_flag,
            impact_marks: blank_marks(),
            impact_scope,
            materiality_default: MaterialityLevel::default(),
            materiality_adjusted: None,
            override_note: None,
        }
    }

    /// Adjusted level when present, otherwise the computed default.
    pub fn effective_materiality(&self) -> MaterialityLevel {
        self.materiality_adjusted
            .unwrap_or(self.materiality_default)
    }

    pub fn is_overridden(&self) -> bool {
        self.materiality_adjusted.is_some()
    }
}

pub fn blank_marks() -> BTreeMap<EsgTopic, ImpactMark> {
    EsgTopic::IMPACT_TOPICS
        .iter()
        .map(|t| (*t, ImpactMark::NotApplicable))
        .collect()
}

pub(crate) fn mark_violations(marks: &BTreeMap<EsgTopic, ImpactMark>) -> Vec<Violation> {
    let mut out = Vec::new();
    for topic in marks.keys().filter(|t| !t.is_impact_topic()) {
        out.push(Violation::new(
            "impact_marks.governance_topic",
            format!("impact_marks.{}", topic.as_str()),
            "governance topics are not marked during use-case analysis",
        ));
    }
    let missing: Vec<_> = EsgTopic::IMPACT_TOPICS
        .iter()
        .filter(|t| !marks.contains_key(t))
        .map(|t| t.as_str())
        .collect();
    if marks.len() != EsgTopic::IMPACT_TOPICS.len() || !missing.is_empty() {
        out.push(Violation::new(
            "impact_marks.count",
            "impact_marks",
            format!(
                "expected one mark for each of the 9 environmental and social topics, got {} (missing: {})",
                marks.len(),
                if missing.is_empty() { "none".to_string() } else { missing.join(", ") }
            ),
        ));
    }
    out
}

impl Validate for UseCaseProfile {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.id.trim().is_empty() {
            out.push(Violation::new("use_case.id", "id", "id must not be empty"));
        }
        out.extend(mark_violations(&self.impact_marks));
        if self.materiality_adjusted.is_some()
            && self
                .override_note
                .as_deref()
                .is_none_or(|n| n.trim().is_empty())
        {
            out.push(Violation::new(
                "override.note.required",
                "override_note",
                "an adjusted materiality level needs a justification note",
            ));
        }
        out
    }
}
