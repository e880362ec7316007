//! Closed vocabularies shared by every part of the workbench.
//!
//! Each enum has a fixed canonical JSON spelling (see `docs/schema.json`).
//! `FromStr` implementations are more lenient than serde and accept the
//! human spellings an operator is likely to type on a command line.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Error returned when a string does not name a known variant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown {kind} `{value}`")]
pub struct UnknownVariant {
    pub kind: &'static str,
    pub value: String,
}

impl UnknownVariant {
    fn new(kind: &'static str, value: &str) -> Self {
        Self {
            kind,
            value: value.to_string(),
        }
    }
}

/// Lowercase and fold `-`, `_`, `/` and whitespace into `_`.
pub(crate) fn normalize_token(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut last_sep = false;
    for ch in raw.trim().chars() {
        if ch == '-' || ch == '_' || ch == '/' || ch.is_whitespace() || ch == ',' {
            if !last_sep && !out.is_empty() {
                out.push('_');
            }
            last_sep = true;
        } else {
            out.extend(ch.to_lowercase());
            last_sep = false;
        }
    }
    while out.ends_with('_') {
        out.pop();
    }
    out
}

macro_rules! closed_enum {
    (
        $(#[$meta:meta])*
        $name:ident, $kind:literal {
            $( $(#[$vmeta:meta])* $variant:ident => $wire:literal, $label:literal $(, [$($alias:literal),*])? ;)+
        }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum $name {
            $( $(#[$vmeta])* #[serde(rename = $wire)] $variant, )+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            /// Canonical wire spelling.
            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $wire,)+
                }
            }

            /// Human-readable label used in rendered reports.
            pub fn label(self) -> &'static str {
                match self {
                    $($name::$variant => $label,)+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.label())
            }
        }

        impl FromStr for $name {
            type Err = UnknownVariant;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let exact = s.trim();
                $(
                    if exact.eq_ignore_ascii_case($wire) || exact.eq_ignore_ascii_case($label)
                        $($(|| exact.eq_ignore_ascii_case($alias))*)?
                    {
                        return Ok($name::$variant);
                    }
                )+
                let key = normalize_token(s);
                if key.is_empty() {
                    return Err(UnknownVariant::new($kind, s));
                }
                $(
                    if key == normalize_token($wire) || key == normalize_token($label)
                        $($(|| key == normalize_token($alias))*)?
                    {
                        return Ok($name::$variant);
                    }
                )+
                Err(UnknownVariant::new($kind, s))
            }
        }
    };
}

closed_enum! {
    /// Default regulatory risk tier of an AI use case, adapted from the EU AI Act.
    RegulatoryFlag, "regulatory flag" {
        Unacceptable => "unacceptable", "Unacceptable";
        High => "high", "High";
        Medium => "medium", "Medium";
        Low => "low", "Low";
        NotDetermined => "not_determined", "Not determined", ["nd", "undetermined"];
    }
}

closed_enum! {
    /// Per-topic impact judgment for a use case.
    ImpactMark, "impact mark" {
        Positive => "positive", "+", ["pos", "opportunity"];
        Negative => "negative", "\u{2212}", ["-", "neg", "threat"];
        Both => "both", "+/\u{2212}", ["+/-", "\u{b1}", "+-"];
        NotApplicable => "not_applicable", "N/A", ["na", "none"];
    }
}

impl ImpactMark {
    /// Whether the topic counts towards the impacted-topic total.
    pub fn is_impacted(self) -> bool {
        !matches!(self, ImpactMark::NotApplicable)
    }
}

closed_enum! {
    /// Reach of a use case's risk. Only the two scored levels are modelled;
    /// the company level exists in documentation only.
    ImpactScope, "impact scope" {
        Industry => "industry", "Industry";
        Systemic => "systemic", "Systemic";
    }
}

closed_enum! {
    Pillar, "ESG pillar" {
        Environmental => "environmental", "Environmental", ["e", "environment"];
        Social => "social", "Social", ["s"];
        Governance => "governance", "Governance", ["g"];
    }
}

closed_enum! {
    /// The twelve ESG topics. The set is closed.
    EsgTopic, "ESG topic" {
        E1 => "E1", "Carbon emissions", ["carbon-emissions", "ghg", "ghg emissions", "greenhouse gas emissions"];
        E2 => "E2", "Resource efficiency", ["resource-efficiency"];
        E3 => "E3", "Ecosystem impact", ["ecosystem-impact"];
        S1 => "S1", "Diversity, equity and inclusion", ["diversity-equity-inclusion", "dei", "diversity equity inclusion", "diversity and inclusion"];
        S2 => "S2", "Human rights", ["human-rights"];
        S3 => "S3", "Labour management", ["labour-management", "labor management"];
        S4 => "S4", "Customer and community", ["customer-and-community"];
        S5 => "S5", "Data privacy and cybersecurity", ["data-privacy-cybersecurity", "data privacy"];
        S6 => "S6", "Health and safety", ["health-and-safety"];
        G1 => "G1", "Board and management", ["board-and-management"];
        G2 => "G2", "Policy", ["policy"];
        G3 => "G3", "Disclosure and reporting", ["disclosure-and-reporting"];
    }
}

impl EsgTopic {
    /// The nine environmental and social topics marked during use-case analysis.
    pub const IMPACT_TOPICS: [EsgTopic; 9] = [
        EsgTopic::E1,
        EsgTopic::E2,
        EsgTopic::E3,
        EsgTopic::S1,
        EsgTopic::S2,
        EsgTopic::S3,
        EsgTopic::S4,
        EsgTopic::S5,
        EsgTopic::S6,
    ];

    pub fn pillar(self) -> Pillar {
        match self.as_str().as_bytes()[0] {
            b'E' => Pillar::Environmental,
            b'S' => Pillar::Social,
            _ => Pillar::Governance,
        }
    }

    /// Stable kebab-case slug, e.g. `carbon-emissions`.
    pub fn slug(self) -> &'static str {
        match self {
            EsgTopic::E1 => "carbon-emissions",
            EsgTopic::E2 => "resource-efficiency",
            EsgTopic::E3 => "ecosystem-impact",
            EsgTopic::S1 => "diversity-equity-inclusion",
            EsgTopic::S2 => "human-rights",
            EsgTopic::S3 => "labour-management",
            EsgTopic::S4 => "customer-and-community",
            EsgTopic::S5 => "data-privacy-cybersecurity",
            EsgTopic::S6 => "health-and-safety",
            EsgTopic::G1 => "board-and-management",
            EsgTopic::G2 => "policy",
            EsgTopic::G3 => "disclosure-and-reporting",
        }
    }

    /// Column index in the 12-topic ordering E1..E3, S1..S6, G1..G3.
    pub fn index(self) -> usize {
        EsgTopic::ALL.iter().position(|t| *t == self).unwrap_or(0)
    }

    pub fn is_impact_topic(self) -> bool {
        self.pillar() != Pillar::Governance
    }
}

closed_enum! {
    /// The eight AI ethics principles that structure the deep-dive question bank.
    Principle, "principle" {
        Hse => "HSE", "Human, societal and environmental wellbeing";
        Hv => "HV", "Human-centred values";
        Far => "FAR", "Fairness";
        Prv => "PRV", "Privacy and security";
        Rel => "REL", "Reliability and safety";
        Trn => "TRN", "Transparency and explainability";
        Con => "CON", "Contestability";
        Acc => "ACC", "Accountability";
    }
}

impl Principle {
    pub fn index(self) -> usize {
        Principle::ALL.iter().position(|p| *p == self).unwrap_or(0)
    }
}

macro_rules! three_level {
    ($(#[$meta:meta])* $name:ident, $kind:literal) => {
        closed_enum! {
            $(#[$meta])*
            $name, $kind {
                Low => "low", "Low";
                Medium => "medium", "Medium";
                High => "high", "High";
            }
        }

        impl Default for $name {
            fn default() -> Self {
                $name::Low
            }
        }
    };
}

three_level!(
    /// Level derived from the number of impacted topics.
    ImpactLevel,
    "impact level"
);
three_level!(
    /// Level derived from the weighted materiality score.
    MaterialityLevel,
    "materiality level"
);
three_level!(
    /// Level derived from the governance indicator score.
    GovernanceLevel,
    "governance level"
);

closed_enum! {
    /// Principle-level outcome of a deep-dive assessment.
    FinalLevel, "final level" {
        Unacceptable => "unacceptable", "Unacceptable";
        Weak => "weak", "Weak";
        Moderate => "moderate", "Moderate";
        Strong => "strong", "Strong";
    }
}

impl Default for FinalLevel {
    fn default() -> Self {
        FinalLevel::Unacceptable
    }
}

closed_enum! {
    /// Disclosure band of a 0..=5 rubric score.
    RubricBand, "rubric band" {
        NotDisclosed => "not_disclosed", "Not disclosed";
        Minimal => "minimal", "Minimal";
        Moderate => "moderate", "Moderate";
        Comprehensive => "comprehensive", "Comprehensive";
    }
}

closed_enum! {
    /// Role of the assessed company with respect to the AI system.
    OrgType, "organisation type" {
        Developer => "developer", "AI developer";
        Purchaser => "purchaser", "AI purchaser";
        Both => "both", "AI developer/purchaser";
    }
}

impl OrgType {
    /// Question tags that a company of this type should see.
    pub fn matching_tags(self) -> &'static [OrgType] {
        match self {
            OrgType::Developer => &[OrgType::Developer, OrgType::Both],
            OrgType::Purchaser => &[OrgType::Purchaser, OrgType::Both],
            OrgType::Both => &[OrgType::Developer, OrgType::Purchaser, OrgType::Both],
        }
    }
}

closed_enum! {
    SystemCategory, "system category" {
        HighRisk => "high_risk", "High-risk AI", ["high", "highrisk"];
        FoundationModel => "foundation_model", "Foundation model", ["fm", "gpai", "foundation"];
        Limited => "limited", "Limited-risk AI";
        Minimal => "minimal", "Minimal-risk AI";
    }
}

closed_enum! {
    Obligation, "obligation" {
        Mandatory => "mandatory", "Mandatory";
        Optional => "optional", "Optional", ["additional"];
    }
}

closed_enum! {
    /// Framework a sub-question was derived from.
    Provenance, "provenance" {
        EuAiAct => "eu_ai_act", "EU AI Act", ["eu"];
        Nist => "nist", "NIST AI RMF", ["nist rmf"];
        Other => "other", "Other";
    }
}

closed_enum! {
    MetricDirection, "metric direction" {
        SmallerBetter => "smaller_better", "The smaller, the better";
        BiggerBetter => "bigger_better", "The bigger, the better";
        Contextual => "contextual", "Contextual";
    }
}

closed_enum! {
    SessionStatus, "session status" {
        Draft => "draft", "Draft";
        InReview => "in_review", "In review";
        Finalized => "finalized", "Finalized", ["final"];
    }
}

closed_enum! {
    AuditAction, "audit action" {
        MaterialityOverride => "materiality_override", "Materiality override";
        FinalLevelOverride => "final_level_override", "Final level override";
        ScoreEdit => "score_edit", "Score edit";
        ConfigChange => "config_change", "Config change";
    }
}
