use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{BankManifest, SubQuestion};
use crate::model::{
    EsgTopic, Obligation, OrgType, Principle, Provenance, SystemCategory, UnknownVariant,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid filter `{field}`: {source}")]
pub struct FilterError {
    pub field: &'static str,
    #[source]
    pub source: UnknownVariant,
}

impl FilterError {
    pub fn code(&self) -> &'static str {
        "filter.unknown_value"
    }
}

/// Conjunctive question filter. `None` / empty fields do not constrain.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterCriteria {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub org_type: Option<OrgType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system_category: Option<SystemCategory>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub esg_topic: Option<EsgTopic>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub principles: BTreeSet<Principle>,
}

fn parse_opt<T: std::str::FromStr<Err = UnknownVariant>>(
    field: &'static str,
    raw: Option<&str>,
) -> Result<Option<T>, FilterError> {
    raw.filter(|s| !s.trim().is_empty())
        .map(|s| s.parse().map_err(|source| FilterError { field, source }))
        .transpose()
}

impl FilterCriteria {
    /// Build criteria from user-supplied strings. Principles may be given as
    /// several values or comma-separated.
    pub fn parse(
        org_type: Option<&str>,
        system_category: Option<&str>,
        esg_topic: Option<&str>,
        principles: &[String],
    ) -> Result<Self, FilterError> {
        let mut parsed = BTreeSet::new();
        for raw in principles.iter().flat_map(|p| p.split(',')) {
            if raw.trim().is_empty() {
                continue;
            }
            parsed.insert(raw.parse().map_err(|source| FilterError {
                field: "principle",
                source,
            })?);
        }
        Ok(Self {
            org_type: parse_opt("org_type", org_type)?,
            system_category: parse_opt("system_category", system_category)?,
            esg_topic: parse_opt("esg_topic", esg_topic)?,
            principles: parsed,
        })
    }

    pub fn matches(&self, q: &SubQuestion) -> bool {
        self.org_type.is_none_or(|o| q.applies_to_org(o))
            && self
                .system_category
                .is_none_or(|c| q.applies_to_category(c))
            && self.esg_topic.is_none_or(|t| q.esg_topics.contains(&t))
            && (self.principles.is_empty() || self.principles.contains(&q.principle))
    }
}

/// A question picked by a filter, with its obligation under the selected
/// system category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelectedQuestion<'a> {
    #[serde(flatten)]
    pub question: &'a SubQuestion,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selected_obligation: Option<Obligation>,
}

/// Questions matching every criterion, ordered by principle then by
/// position in the bank.
pub fn filter_questions<'a>(
    bank: &'a BankManifest,
    criteria: &FilterCriteria,
) -> Vec<SelectedQuestion<'a>> {
    let mut picked: Vec<(usize, &SubQuestion)> = bank
        .questions
        .iter()
        .enumerate()
        .filter(|(_, q)| criteria.matches(q))
        .collect();
    picked.sort_by_key(|(pos, q)| (q.principle.index(), *pos));
    picked
        .into_iter()
        .map(|(_, q)| SelectedQuestion {
            question: q,
            selected_obligation: criteria.system_category.and_then(|c| q.obligation_for(c)),
        })
        .collect()
}

/// A filter result with its obligation tally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterSummary<'a> {
    pub count: usize,
    pub mandatory: usize,
    pub optional: usize,
    pub questions: Vec<SelectedQuestion<'a>>,
}

pub fn filter_summary<'a>(bank: &'a BankManifest, criteria: &FilterCriteria) -> FilterSummary<'a> {
    let questions = filter_questions(bank, criteria);
    let tally = |o| {
        questions
            .iter()
            .filter(|q| q.selected_obligation == Some(o))
            .count()
    };
    FilterSummary {
        count: questions.len(),
        mandatory: tally(Obligation::Mandatory),
        optional: tally(Obligation::Optional),
        questions,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObligationSplit {
    pub mandatory: usize,
    pub optional: usize,
}

/// Size, obligation and provenance figures of a bank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BankStats {
    pub version: String,
    pub completeness: super::Completeness,
    pub key_questions: usize,
    pub sub_questions: usize,
    pub metrics: usize,
    pub indicators: usize,
    pub high_risk: ObligationSplit,
    pub foundation_model: ObligationSplit,
    pub provenance: ProvenanceStats,
}

pub fn bank_stats(bank: &BankManifest) -> BankStats {
    let split = |c| {
        let (mandatory, optional) = bank.obligation_split(c);
        ObligationSplit {
            mandatory,
            optional,
        }
    };
    BankStats {
        version: bank.version.clone(),
        completeness: bank.completeness,
        key_questions: bank.key_questions.len(),
        sub_questions: bank.questions.len(),
        metrics: bank.metrics.len(),
        indicators: bank.indicators().len(),
        high_risk: split(SystemCategory::HighRisk),
        foundation_model: split(SystemCategory::FoundationModel),
        provenance: provenance_stats(bank),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceCounts {
    pub nist_only: usize,
    pub eu_only: usize,
    pub both: usize,
    pub other: usize,
    pub total: usize,
}

impl ProvenanceCounts {
    pub fn combined(&self) -> usize {
        self.nist_only + self.eu_only + self.both
    }
}

/// Integer percentages, rounded half up.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceShares {
    pub nist_only: u32,
    pub eu_only: u32,
    pub both: u32,
    pub combined: u32,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceStats {
    pub counts: ProvenanceCounts,
    pub percent: ProvenanceShares,
}

/// `100 * part / total` rounded half up, in exact integer arithmetic.
/// A zero total yields 0.
pub fn round_half_up_percent(part: usize, total: usize) -> u32 {
    if total == 0 {
        return 0;
    }
    ((200 * part as u64 + total as u64) / (2 * total as u64)) as u32
}

pub fn provenance_stats(bank: &BankManifest) -> ProvenanceStats {
    let mut counts = ProvenanceCounts {
        total: bank.questions.len(),
        ..ProvenanceCounts::default()
    };
    for q in &bank.questions {
        let eu = q.provenance.contains(&Provenance::EuAiAct);
        let nist = q.provenance.contains(&Provenance::Nist);
        match (eu, nist) {
            (true, true) => counts.both += 1,
            (true, false) => counts.eu_only += 1,
            (false, true) => counts.nist_only += 1,
            (false, false) => counts.other += 1,
        }
    }
    let pct = |n| round_half_up_percent(n, counts.total);
    ProvenanceStats {
        counts,
        percent: ProvenanceShares {
            nist_only: pct(counts.nist_only),
            eu_only: pct(counts.eu_only),
            both: pct(counts.both),
            combined: pct(counts.combined()),
        },
    }
}

/// Principle x ESG topic count of tagged sub-questions (8 x 12).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingMatrix {
    pub cells: [[u32; 12]; 8],
}

impl MappingMatrix {
    pub fn get(&self, principle: Principle, topic: EsgTopic) -> u32 {
        self.cells[principle.index()][topic.index()]
    }

    pub fn row_sum(&self, principle: Principle) -> u32 {
        self.cells[principle.index()].iter().sum()
    }

    pub fn header() -> Vec<String> {
        std::iter::once("principle".to_string())
            .chain(EsgTopic::ALL.iter().map(|t| t.as_str().to_string()))
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        Principle::ALL
            .iter()
            .map(|p| {
                std::iter::once(p.as_str().to_string())
                    .chain(self.cells[p.index()].iter().map(u32::to_string))
                    .collect()
            })
            .collect()
    }
}

pub fn mapping_matrix(bank: &BankManifest) -> MappingMatrix {
    let mut cells = [[0u32; 12]; 8];
    for q in &bank.questions {
        for topic in &q.esg_topics {
            cells[q.principle.index()][topic.index()] += 1;
        }
    }
    MappingMatrix { cells }
}
