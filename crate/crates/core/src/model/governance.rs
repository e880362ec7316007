use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::taxonomy::GovernanceLevel;
use super::validate::{Validate, Violation};

/// Category grouping of the governance indicators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndicatorCategory {
    BoardOversight,
    RaiCommitment,
    RaiImplementation,
    RaiMetrics,
}

impl IndicatorCategory {
    pub fn label(self) -> &'static str {
        match self {
            IndicatorCategory::BoardOversight => "Board oversight",
            IndicatorCategory::RaiCommitment => "RAI commitment",
            IndicatorCategory::RaiImplementation => "RAI implementation",
            IndicatorCategory::RaiMetrics => "RAI metrics",
        }
    }
}

/// The ten binary RAI governance indicators, in catalogue order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GovernanceIndicator {
    BoardAccountability,
    BoardCapability,
    PublicRaiPolicy,
    SensitiveUseCases,
    RaiTarget,
    RaiResponsibility,
    EmployeeAwareness,
    SystemIntegration,
    AiIncidents,
    RaiMetrics,
}

impl GovernanceIndicator {
    pub const ALL: [GovernanceIndicator; 10] = [
        GovernanceIndicator::BoardAccountability,
        GovernanceIndicator::BoardCapability,
        GovernanceIndicator::PublicRaiPolicy,
        GovernanceIndicator::SensitiveUseCases,
        GovernanceIndicator::RaiTarget,
        GovernanceIndicator::RaiResponsibility,
        GovernanceIndicator::EmployeeAwareness,
        GovernanceIndicator::SystemIntegration,
        GovernanceIndicator::AiIncidents,
        GovernanceIndicator::RaiMetrics,
    ];

    /// Zero-based catalogue position; also the index into `governance_weights`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GovernanceIndicator::BoardAccountability => "board_accountability",
            GovernanceIndicator::BoardCapability => "board_capability",
            GovernanceIndicator::PublicRaiPolicy => "public_rai_policy",
            GovernanceIndicator::SensitiveUseCases => "sensitive_use_cases",
            GovernanceIndicator::RaiTarget => "rai_target",
            GovernanceIndicator::RaiResponsibility => "rai_responsibility",
            GovernanceIndicator::EmployeeAwareness => "employee_awareness",
            GovernanceIndicator::SystemIntegration => "system_integration",
            GovernanceIndicator::AiIncidents => "ai_incidents",
            GovernanceIndicator::RaiMetrics => "rai_metrics",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GovernanceIndicator::BoardAccountability => "Board accountability",
            GovernanceIndicator::BoardCapability => "Board capability",
            GovernanceIndicator::PublicRaiPolicy => "Public RAI policy",
            GovernanceIndicator::SensitiveUseCases => "Sensitive use cases",
            GovernanceIndicator::RaiTarget => "RAI target",
            GovernanceIndicator::RaiResponsibility => "RAI responsibility",
            GovernanceIndicator::EmployeeAwareness => "Employee awareness",
            GovernanceIndicator::SystemIntegration => "System integration",
            GovernanceIndicator::AiIncidents => "AI incidents",
            GovernanceIndicator::RaiMetrics => "RAI metrics",
        }
    }

    pub fn category(self) -> IndicatorCategory {
        use GovernanceIndicator::*;
        match self {
            BoardAccountability | BoardCapability => IndicatorCategory::BoardOversight,
            PublicRaiPolicy | SensitiveUseCases | RaiTarget => IndicatorCategory::RaiCommitment,
            RaiResponsibility | EmployeeAwareness | SystemIntegration | AiIncidents => {
                IndicatorCategory::RaiImplementation
            }
            RaiMetrics => IndicatorCategory::RaiMetrics,
        }
    }

    /// What a company must show for the indicator to be met.
    pub fn requirement(self) -> &'static str {
        use GovernanceIndicator::*;
        match self {
            BoardAccountability => "RAI is explicitly part of the responsibility of the Board or a relevant Board subcommittee (e.g. risk or ESG committee).",
            BoardCapability => "At least one Director with strong technology-related experience.",
            PublicRaiPolicy => "A public RAI policy aligned with relevant regulations and standards (e.g. the EU AI Act, ISO/IEC 42001).",
            SensitiveUseCases => "Sensitive, high-risk use cases (such as facial recognition) are addressed in the RAI policy.",
            RaiTarget => "The RAI policy or commitment is supported by clear targets.",
            RaiResponsibility => "RAI oversight is assigned, either as a dedicated role or as part of another role or function.",
            EmployeeAwareness => "A specific program raises employee awareness of AI and its ethical and ESG considerations.",
            SystemIntegration => "The RAI policy is integrated into existing processes: risk management, product development, procurement and ESG.",
            AiIncidents => "RAI issues and incidents are tracked and reported internally.",
            RaiMetrics => "RAI metrics tied to the policy are identified and reported externally to stakeholders.",
        }
    }
}

/// One indicator judgment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndicatorJudgment {
    pub indicator: GovernanceIndicator,
    pub met: bool,
    #[serde(default)]
    pub evidence: String,
}

/// Governance checklist for one company.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GovernanceAssessment {
    pub company: String,
    pub judgments: Vec<IndicatorJudgment>,
    /// Weighted sum of met indicators; recomputed by the engine.
    #[serde(default)]
    pub score: f64,
    #[serde(default)]
    pub level: GovernanceLevel,
}

impl GovernanceAssessment {
    /// An assessment with every indicator unmet.
    pub fn blank(company: impl Into<String>) -> Self {
        Self {
            company: company.into(),
            judgments: GovernanceIndicator::ALL
                .iter()
                .map(|i| IndicatorJudgment {
                    indicator: *i,
                    met: false,
                    evidence: String::new(),
                })
                .collect(),
            score: 0.0,
            level: GovernanceLevel::Low,
        }
    }

    /// Met flags in catalogue order. `None` when the judgment set is malformed.
    pub fn met_vector(&self) -> Option<[bool; 10]> {
        if !self.validate().is_empty() {
            return None;
        }
        let mut out = [false; 10];
        for j in &self.judgments {
            out[j.indicator.index()] = j.met;
        }
        Some(out)
    }
}

impl Validate for GovernanceAssessment {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, j) in self.judgments.iter().enumerate() {
            if !seen.insert(j.indicator) {
                out.push(Violation::new(
                    "judgments.duplicate",
                    format!("judgments[{i}].indicator"),
                    format!(
                        "indicator `{}` appears more than once",
                        j.indicator.as_str()
                    ),
                ));
            }
        }
        if self.judgments.len() != GovernanceIndicator::ALL.len() {
            out.push(Violation::new(
                "judgments.count",
                "judgments",
                format!("expected 10 judgments, got {}", self.judgments.len()),
            ));
        }
        out
    }
}
