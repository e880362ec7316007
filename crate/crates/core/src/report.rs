//! Deterministic reports over sessions and banks.
//!
//! A [`ReportBundle`] gathers every section as typed rows. Each section
//! flattens to a [`Table`]; CSV and Markdown are both rendered from the same
//! tables, so a Markdown table mirrors its CSV cell for cell. Reports carry
//! SHA-256 hashes of their inputs and never embed clocks or paths.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bank::{mapping_matrix, provenance_stats, BankManifest, MappingMatrix, ProvenanceStats};
use crate::model::{
    FinalLevel, GovernanceLevel, ImpactLevel, ImpactScope, IndicatorCategory, MaterialityLevel,
    Principle, RegulatoryFlag, RubricBand, SystemCategory,
};
use crate::scoring::{display2, score_use_case};
use crate::store::Session;

pub const REPORT_SCHEMA: &str = "esgai.report/v1";

/// Marker for rows that need analyst follow-up.
pub const ACTION_MARKER: &str = "▲";

const EVIDENCE_EXCERPT_CHARS: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Materiality,
    Governance,
    Principles,
    Evidence,
    Metrics,
    Mapping,
    Provenance,
}

impl Section {
    pub const ALL: [Section; 7] = [
        Section::Materiality,
        Section::Governance,
        Section::Principles,
        Section::Evidence,
        Section::Metrics,
        Section::Mapping,
        Section::Provenance,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Section::Materiality => "materiality",
            Section::Governance => "governance",
            Section::Principles => "principles",
            Section::Evidence => "evidence",
            Section::Metrics => "metrics",
            Section::Mapping => "mapping",
            Section::Provenance => "provenance",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("unsupported report format `{0}`; use json, csv or markdown")]
    UnsupportedFormat(String),
    #[error("unknown report section `{0}`")]
    UnknownSection(String),
    #[error("section `{0}` is not available for this report")]
    MissingSection(&'static str),
}

impl ReportError {
    pub fn code(&self) -> &'static str {
        match self {
            ReportError::UnsupportedFormat(_) => "report.format",
            ReportError::UnknownSection(_) | ReportError::MissingSection(_) => "report.section",
        }
    }
}

impl FromStr for ReportFormat {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(ReportError::UnsupportedFormat(s.to_string())),
        }
    }
}

impl FromStr for Section {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Section::ALL
            .into_iter()
            .find(|sec| sec.as_str() == key)
            .ok_or_else(|| ReportError::UnknownSection(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputHash {
    pub name: String,
    pub sha256: String,
}

fn hash_input(name: &str, content: &str) -> InputHash {
    InputHash {
        name: name.to_string(),
        sha256: hex::encode(Sha256::digest(content.as_bytes())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialityRow {
    pub sector: String,
    pub use_case: String,
    pub use_case_id: String,
    pub regulatory_flag: RegulatoryFlag,
    pub impacted: u32,
    pub impact_level: ImpactLevel,
    pub impact_scope: ImpactScope,
    pub score: f64,
    pub materiality_default: MaterialityLevel,
    pub materiality_adjusted: Option<MaterialityLevel>,
    pub overridden: bool,
    /// Set for rows whose regulatory flag is not determined yet.
    pub action_required: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorRow {
    pub indicator: String,
    pub name: String,
    pub category: IndicatorCategory,
    pub met: bool,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GovernanceSummary {
    pub company: String,
    pub indicators: Vec<IndicatorRow>,
    pub score: f64,
    pub level: GovernanceLevel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrincipleRow {
    pub principle: Principle,
    pub answered: usize,
    pub average: f64,
    pub suggested_level: FinalLevel,
    pub final_level: FinalLevel,
    pub overridden: bool,
    pub override_note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceRow {
    pub question_id: String,
    pub principle: Option<Principle>,
    pub value: u8,
    pub band: RubricBand,
    pub excerpt: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub metric_id: String,
    pub name: String,
    pub mandatory: bool,
    pub disclosed: bool,
    /// Mandatory and not disclosed.
    pub gap: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeepDiveReport {
    pub bank_version: String,
    pub system_category: Option<SystemCategory>,
    pub principles: Vec<PrincipleRow>,
    pub evidence: Vec<EvidenceRow>,
    /// Empty when the session's bank is unavailable.
    pub metrics: Vec<MetricRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubjectKind {
    Session,
    Bank,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSubject {
    pub kind: SubjectKind,
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub company: Option<String>,
    pub bank_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub schema: String,
    pub subject: ReportSubject,
    pub inputs: Vec<InputHash>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub materiality_matrix: Option<Vec<MaterialityRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub governance_summary: Option<GovernanceSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deep_dive_report: Option<DeepDiveReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mapping_heatmap: Option<MappingMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance_chart: Option<ProvenanceStats>,
}

fn excerpt(text: &str) -> String {
    let text = text.split_whitespace().collect::<Vec<_>>().join(" ");
    if text.chars().count() <= EVIDENCE_EXCERPT_CHARS {
        text
    } else {
        let cut: String = text.chars().take(EVIDENCE_EXCERPT_CHARS - 3).collect();
        format!("{}...", cut.trim_end())
    }
}

pub fn materiality_rows(session: &Session) -> Vec<MaterialityRow> {
    session
        .use_cases
        .iter()
        .map(|u| {
            // stored sessions are validated on save, so scoring cannot fail here
            let score = score_use_case(u, &session.config).expect("stored use cases score");
            MaterialityRow {
                sector: u.sector.clone(),
                use_case: u.name.clone(),
                use_case_id: u.id.clone(),
                regulatory_flag: u.regulatory_flag,
                impacted: score.impact.impacted,
                impact_level: score.impact.level,
                impact_scope: u.impact_scope,
                score: score.materiality.total,
                materiality_default: score.materiality.level,
                materiality_adjusted: u.materiality_adjusted,
                overridden: u.is_overridden(),
                action_required: u.regulatory_flag == RegulatoryFlag::NotDetermined,
            }
        })
        .collect()
}

fn governance_summary(session: &Session) -> GovernanceSummary {
    let g = &session.governance;
    GovernanceSummary {
        company: g.company.clone(),
        indicators: g
            .judgments
            .iter()
            .map(|j| IndicatorRow {
                indicator: j.indicator.as_str().to_string(),
                name: j.indicator.name().to_string(),
                category: j.indicator.category(),
                met: j.met,
                evidence: excerpt(&j.evidence),
            })
            .collect(),
        score: g.score,
        level: g.level,
    }
}

fn deep_dive_report(session: &Session, bank: Option<&BankManifest>) -> DeepDiveReport {
    let dd = &session.deep_dive;
    let principles = dd
        .principle_results
        .iter()
        .map(|(p, r)| PrincipleRow {
            principle: *p,
            answered: r.answered,
            average: r.average,
            suggested_level: r.suggested_level,
            final_level: r.final_level,
            overridden: r.is_overridden(),
            override_note: r.override_note.clone().unwrap_or_default(),
        })
        .collect();
    let mut evidence: Vec<EvidenceRow> = dd
        .answers
        .iter()
        .map(|(id, a)| EvidenceRow {
            question_id: id.clone(),
            principle: bank.and_then(|b| b.question(id)).map(|q| q.principle),
            value: a.value,
            band: a.band,
            excerpt: excerpt(&a.evidence),
        })
        .collect();
    if let Some(bank) = bank {
        let position = |id: &str| bank.questions.iter().position(|q| q.id == id);
        evidence.sort_by_key(|e| (e.principle.map(Principle::index), position(&e.question_id)));
    }
    let metrics = bank
        .map(|b| {
            b.metrics
                .iter()
                .map(|m| {
                    let mandatory = match dd.system_category {
                        Some(c) => m.mandatory_for.contains(&c),
                        None => !m.mandatory_for.is_empty(),
                    };
                    let disclosed = dd.disclosed_metrics.contains(&m.id);
                    MetricRow {
                        metric_id: m.id.clone(),
                        name: m.name.clone(),
                        mandatory,
                        disclosed,
                        gap: mandatory && !disclosed,
                    }
                })
                .collect()
        })
        .unwrap_or_default();
    DeepDiveReport {
        bank_version: dd.bank_version.clone(),
        system_category: dd.system_category,
        principles,
        evidence,
        metrics,
    }
}

/// Full report for a session. Bank-derived sections need the session's bank.
pub fn session_report(session: &Session, bank: Option<&BankManifest>) -> ReportBundle {
    let mut inputs = vec![hash_input("session", &session.to_json())];
    if let Some(b) = bank {
        inputs.push(hash_input("bank", &b.to_json()));
    }
    ReportBundle {
        schema: REPORT_SCHEMA.to_string(),
        subject: ReportSubject {
            kind: SubjectKind::Session,
            id: session.id.clone(),
            company: Some(session.company.clone()),
            bank_version: session.bank_version.clone(),
        },
        inputs,
        note: "Materiality levels are illustrative under the session's scoring configuration."
            .to_string(),
        materiality_matrix: Some(materiality_rows(session)),
        governance_summary: Some(governance_summary(session)),
        deep_dive_report: Some(deep_dive_report(session, bank)),
        mapping_heatmap: bank.map(mapping_matrix),
        provenance_chart: bank.map(provenance_stats),
    }
}

pub fn bank_report(bank: &BankManifest) -> ReportBundle {
    ReportBundle {
        schema: REPORT_SCHEMA.to_string(),
        subject: ReportSubject {
            kind: SubjectKind::Bank,
            id: bank.version.clone(),
            company: None,
            bank_version: bank.version.clone(),
        },
        inputs: vec![hash_input("bank", &bank.to_json())],
        note: String::new(),
        materiality_matrix: None,
        governance_summary: None,
        deep_dive_report: None,
        mapping_heatmap: Some(mapping_matrix(bank)),
        provenance_chart: Some(provenance_stats(bank)),
    }
}

/// A rectangular section ready for CSV or Markdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn cells<const N: usize>(items: [&str; N]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn marker(b: bool) -> String {
    if b { ACTION_MARKER } else { "" }.to_string()
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("writing to memory");
        for row in &self.rows {
            w.write_record(row).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flushing to memory")).expect("cells are UTF-8")
    }

    pub fn to_markdown(&self) -> String {
        fn esc(cell: &str) -> String {
            cell.replace('\\', "\\\\")
                .replace('|', "\\|")
                .replace('\n', " ")
        }
        let line = |row: &[String]| {
            format!(
                "| {} |\n",
                row.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | ")
            )
        };
        let mut out = line(&self.header);
        out.push_str(&format!("|{}\n", "---|".repeat(self.header.len())));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }
}

impl ReportBundle {
    /// Sections present in this bundle, in rendering order.
    pub fn sections(&self) -> Vec<Section> {
        Section::ALL
            .into_iter()
            .filter(|s| self.table(*s).is_some())
            .collect()
    }

    /// Default section for CSV output.
    pub fn primary_section(&self) -> Section {
        match self.subject.kind {
            SubjectKind::Session => Section::Materiality,
            SubjectKind::Bank => Section::Mapping,
        }
    }

    pub fn table(&self, section: Section) -> Option<Table> {
        match section {
            Section::Materiality => self.materiality_matrix.as_ref().map(|rows| Table {
                title: "Materiality matrix".to_string(),
                header: cells([
                    "sector",
                    "use_case",
                    "flag",
                    "N",
                    "impact_level",
                    "scope",
                    "F",
                    "default",
                    "adjusted",
                    "overridden",
                    "action",
                ]),
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.sector.clone(),
                            r.use_case.clone(),
                            r.regulatory_flag.as_str().to_string(),
                            r.impacted.to_string(),
                            r.impact_level.as_str().to_string(),
                            r.impact_scope.as_str().to_string(),
                            display2(r.score),
                            r.materiality_default.as_str().to_string(),
                            r.materiality_adjusted
                                .map(|l| l.as_str().to_string())
                                .unwrap_or_default(),
                            yes_no(r.overridden),
                            marker(r.action_required),
                        ]
                    })
                    .collect(),
            }),
            Section::Governance => self.governance_summary.as_ref().map(|g| Table {
                title: format!(
                    "Governance indicators (F = {}, level {})",
                    display2(g.score),
                    g.level.as_str()
                ),
                header: cells(["indicator", "category", "met", "evidence"]),
                rows: g
                    .indicators
                    .iter()
                    .map(|i| {
                        vec![
                            i.name.clone(),
                            i.category.label().to_string(),
                            yes_no(i.met),
                            i.evidence.clone(),
                        ]
                    })
                    .collect(),
            }),
            Section::Principles => self.deep_dive_report.as_ref().map(|d| Table {
                title: "Deep-dive principles".to_string(),
                header: cells([
                    "principle",
                    "answered",
                    "average",
                    "suggested",
                    "final",
                    "overridden",
                    "note",
                ]),
                rows: d
                    .principles
                    .iter()
                    .map(|p| {
                        vec![
                            p.principle.as_str().to_string(),
                            p.answered.to_string(),
                            display2(p.average),
                            p.suggested_level.as_str().to_string(),
                            p.final_level.as_str().to_string(),
                            yes_no(p.overridden),
                            p.override_note.clone(),
                        ]
                    })
                    .collect(),
            }),
            Section::Evidence => self.deep_dive_report.as_ref().map(|d| Table {
                title: "Deep-dive evidence".to_string(),
                header: cells(["question", "principle", "score", "band", "evidence"]),
                rows: d
                    .evidence
                    .iter()
                    .map(|e| {
                        vec![
                            e.question_id.clone(),
                            e.principle
                                .map(|p| p.as_str().to_string())
                                .unwrap_or_default(),
                            e.value.to_string(),
                            e.band.as_str().to_string(),
                            e.excerpt.clone(),
                        ]
                    })
                    .collect(),
            }),
            Section::Metrics => self
                .deep_dive_report
                .as_ref()
                .filter(|d| !d.metrics.is_empty())
                .map(|d| Table {
                    title: "Guide metric disclosure".to_string(),
                    header: cells(["metric", "name", "mandatory", "disclosed", "action"]),
                    rows: d
                        .metrics
                        .iter()
                        .map(|m| {
                            vec![
                                m.metric_id.clone(),
                                m.name.clone(),
                                yes_no(m.mandatory),
                                yes_no(m.disclosed),
                                marker(m.gap),
                            ]
                        })
                        .collect(),
                }),
            Section::Mapping => self.mapping_heatmap.as_ref().map(|m| Table {
                title: "Principle to ESG topic mapping".to_string(),
                header: MappingMatrix::header(),
                rows: m.rows(),
            }),
            Section::Provenance => self.provenance_chart.as_ref().map(|p| {
                let c = p.counts;
                let total = c.total;
                let pct = |n| crate::bank::round_half_up_percent(n, total).to_string();
                Table {
                    title: "Question provenance".to_string(),
                    header: cells(["source", "questions", "percent"]),
                    rows: vec![
                        vec![
                            "nist_only".into(),
                            c.nist_only.to_string(),
                            p.percent.nist_only.to_string(),
                        ],
                        vec![
                            "eu_ai_act_only".into(),
                            c.eu_only.to_string(),
                            p.percent.eu_only.to_string(),
                        ],
                        vec![
                            "both".into(),
                            c.both.to_string(),
                            p.percent.both.to_string(),
                        ],
                        vec![
                            "eu_ai_act_or_nist".into(),
                            c.combined().to_string(),
                            p.percent.combined.to_string(),
                        ],
                        vec!["other".into(), c.other.to_string(), pct(c.other)],
                        vec![
                            "total".into(),
                            total.to_string(),
                            if total == 0 { "0" } else { "100" }.to_string(),
                        ],
                    ],
                }
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
        out.push('\n');
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        match (&self.subject.kind, &self.subject.company) {
            (SubjectKind::Session, Some(company)) => {
                let _ = writeln!(out, "# Assessment report: {company}\n");
                let _ = writeln!(
                    out,
                    "Session `{}`, question bank `{}`.\n",
                    self.subject.id, self.subject.bank_version
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    "# Question bank report: {}\n",
                    self.subject.bank_version
                );
            }
        }
        if !self.note.is_empty() {
            let _ = writeln!(out, "{}\n", self.note);
        }
        out.push_str("Inputs:\n\n");
        for i in &self.inputs {
            let _ = writeln!(out, "- {}: sha256 `{}`", i.name, i.sha256);
        }
        for section in self.sections() {
            let table = self.table(section).expect("listed sections exist");
            let _ = write!(out, "\n## {}\n\n", table.title);
            if table.rows.is_empty() {
                out.push_str("_No rows._\n\n");
            }
            out.push_str(&table.to_markdown());
        }
        out
    }

    /// Render the bundle. CSV carries one section: `section` or the bundle's
    /// primary one.
    pub fn render(
        &self,
        format: ReportFormat,
        section: Option<Section>,
    ) -> Result<String, ReportError> {
        match format {
            ReportFormat::Json => Ok(self.to_json()),
            ReportFormat::Markdown => Ok(self.to_markdown()),
            ReportFormat::Csv => {
                let section = section.unwrap_or_else(|| self.primary_section());
                self.table(section)
                    .map(|t| t.to_csv())
                    .ok_or(ReportError::MissingSection(section.as_str()))
            }
        }
    }
}
