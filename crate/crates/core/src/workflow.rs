//! Audited edits on a session.
//!
//! Each operation mutates the session in memory, recomputes every derived
//! value it touches and returns exactly one [`AuditRecord`]. Callers persist
//! the session and the record together through
//! [`SessionStore::save_session`](crate::store::SessionStore::save_session).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bank::BankManifest;
use crate::model::{
    AuditAction, AuditRecord, EsgTopic, FinalLevel, GovernanceIndicator, ImpactMark, ImpactScope,
    IndicatorJudgment, MaterialityLevel, Principle, PrincipleResult, RegulatoryFlag, RubricScore,
    ScoringConfig, SystemCategory, UseCaseProfile, Validate, Violation,
};
use crate::scoring::{self, ScoringError, UseCaseScore};
use crate::store::Session;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WorkflowError {
    #[error(transparent)]
    Scoring(#[from] ScoringError),
    #[error("use case `{0}` does not exist in this session")]
    UseCaseNotFound(String),
    #[error("sub-question `{0}` is not in the session's question bank")]
    UnknownQuestion(String),
    #[error("guide metric `{0}` is not in the session's question bank")]
    UnknownMetric(String),
    #[error("the session uses bank `{session}` but bank `{bank}` was supplied")]
    BankMismatch { session: String, bank: String },
    #[error("principle {0} has no answered sub-questions")]
    NoResult(Principle),
    #[error("the edit is invalid")]
    Invalid(Vec<Violation>),
}

impl WorkflowError {
    pub fn code(&self) -> &'static str {
        match self {
            WorkflowError::Scoring(e) => e.code(),
            WorkflowError::UseCaseNotFound(_) => "use_case.not_found",
            WorkflowError::UnknownQuestion(_) => "deep_dive.unknown_question",
            WorkflowError::UnknownMetric(_) => "deep_dive.unknown_metric",
            WorkflowError::BankMismatch { .. } => "deep_dive.bank_mismatch",
            WorkflowError::NoResult(_) => "principle.no_answers",
            WorkflowError::Invalid(_) => "session.invalid",
        }
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            WorkflowError::Scoring(e) => e.violations(),
            WorkflowError::Invalid(v) => v,
            _ => &[],
        }
    }
}

/// Inputs of one use case. Marks are merged into the existing ones.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UseCaseUpdate {
    #[serde(default)]
    pub marks: BTreeMap<EsgTopic, ImpactMark>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regulatory_flag: Option<RegulatoryFlag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub impact_scope: Option<ImpactScope>,
    #[serde(default)]
    pub note: String,
}

/// Governance judgments to change. Indicators not listed keep their value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GovernanceUpdate {
    pub judgments: Vec<IndicatorJudgment>,
    #[serde(default)]
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnswerInput {
    pub value: i64,
    #[serde(default)]
    pub evidence: String,
}

/// Deep-dive answers to set; a `null` answer removes it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnswersUpdate {
    #[serde(default)]
    pub answers: BTreeMap<String, Option<AnswerInput>>,
    /// Replaces the disclosed metric set when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disclosed_metrics: Option<BTreeSet<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system_category: Option<SystemCategory>,
    #[serde(default)]
    pub note: String,
}

fn use_case_snapshot(profile: &UseCaseProfile, score: &UseCaseScore) -> Value {
    json!({
        "regulatory_flag": profile.regulatory_flag,
        "impact_scope": profile.impact_scope,
        "impact_marks": profile.impact_marks,
        "impacted": score.impact.impacted,
        "impact_level": score.impact.level,
        "score": score.materiality.total,
        "materiality_default": profile.materiality_default,
    })
}

fn governance_snapshot(session: &Session) -> Value {
    let met: Vec<_> = session
        .governance
        .judgments
        .iter()
        .filter(|j| j.met)
        .map(|j| j.indicator)
        .collect();
    json!({ "met": met, "score": session.governance.score, "level": session.governance.level })
}

fn deep_dive_snapshot(session: &Session) -> Value {
    let answers: BTreeMap<_, _> = session
        .deep_dive
        .answers
        .iter()
        .map(|(k, v)| (k.clone(), v.value))
        .collect();
    let results: BTreeMap<_, _> = session
        .deep_dive
        .principle_results
        .iter()
        .map(|(p, r)| {
            (
                p.as_str(),
                json!({ "average": r.average, "suggested_level": r.suggested_level, "final_level": r.final_level }),
            )
        })
        .collect();
    json!({
        "answers": answers,
        "disclosed_metrics": session.deep_dive.disclosed_metrics,
        "principle_results": results,
    })
}

fn find_use_case<'a>(
    session: &'a mut Session,
    id: &str,
) -> Result<&'a mut UseCaseProfile, WorkflowError> {
    session
        .use_case_mut(id)
        .ok_or_else(|| WorkflowError::UseCaseNotFound(id.to_string()))
}

/// Change impact marks, flag or scope of a use case and recompute its
/// default materiality.
pub fn update_use_case(
    session: &mut Session,
    use_case_id: &str,
    update: &UseCaseUpdate,
    actor: &str,
) -> Result<(UseCaseScore, AuditRecord), WorkflowError> {
    let cfg = session.config.clone();
    let profile = find_use_case(session, use_case_id)?;
    let before_score = scoring::score_use_case(profile, &cfg)?;
    let before = use_case_snapshot(profile, &before_score);

    let mut next = profile.clone();
    for (topic, mark) in &update.marks {
        next.impact_marks.insert(*topic, *mark);
    }
    if let Some(flag) = update.regulatory_flag {
        next.regulatory_flag = flag;
    }
    if let Some(scope) = update.impact_scope {
        next.impact_scope = scope;
    }
    let score = scoring::refresh_use_case(&mut next, &cfg)?;
    let after = use_case_snapshot(&next, &score);
    *profile = next;
    Ok((
        score,
        AuditRecord {
            actor: actor.to_string(),
            action: AuditAction::ScoreEdit,
            target: format!("use_cases.{use_case_id}.inputs"),
            before,
            after,
            note: update.note.clone(),
        },
    ))
}

/// Record an analyst materiality level next to the computed default.
pub fn override_materiality(
    session: &mut Session,
    use_case_id: &str,
    level: MaterialityLevel,
    note: &str,
    actor: &str,
) -> Result<AuditRecord, WorkflowError> {
    let profile = find_use_case(session, use_case_id)?;
    let (updated, record) = scoring::override_materiality(profile, level, note, actor)?;
    *profile = updated;
    Ok(record)
}

/// Drop an analyst override so the default applies again.
pub fn clear_materiality_override(
    session: &mut Session,
    use_case_id: &str,
    note: &str,
    actor: &str,
) -> Result<AuditRecord, WorkflowError> {
    if note.trim().is_empty() {
        return Err(ScoringError::NoteRequired.into());
    }
    let profile = find_use_case(session, use_case_id)?;
    let before = json!({
        "default": profile.materiality_default,
        "adjusted": profile.materiality_adjusted,
        "effective": profile.effective_materiality(),
    });
    profile.materiality_adjusted = None;
    profile.override_note = None;
    Ok(AuditRecord {
        actor: actor.to_string(),
        action: AuditAction::MaterialityOverride,
        target: format!("use_cases.{use_case_id}.materiality"),
        before,
        after: json!({
            "default": profile.materiality_default,
            "adjusted": Value::Null,
            "effective": profile.materiality_default,
        }),
        note: note.to_string(),
    })
}

fn refresh_governance(session: &mut Session) -> Result<(), ScoringError> {
    let met = session
        .governance
        .met_vector()
        .ok_or(ScoringError::JudgmentCount(
            session.governance.judgments.len(),
        ))?;
    let (score, level) = scoring::governance_score(&met, &session.config)?;
    session.governance.score = score;
    session.governance.level = level;
    Ok(())
}

/// Set governance judgments and recompute the weighted score and level.
pub fn update_governance(
    session: &mut Session,
    update: &GovernanceUpdate,
    actor: &str,
) -> Result<AuditRecord, WorkflowError> {
    let mut seen = BTreeSet::new();
    let dupes: Vec<_> = update
        .judgments
        .iter()
        .enumerate()
        .filter(|(_, j)| !seen.insert(j.indicator))
        .map(|(i, j)| {
            Violation::new(
                "judgments.duplicate",
                format!("judgments[{i}].indicator"),
                format!(
                    "indicator `{}` appears more than once",
                    j.indicator.as_str()
                ),
            )
        })
        .collect();
    if !dupes.is_empty() {
        return Err(WorkflowError::Invalid(dupes));
    }
    let before = governance_snapshot(session);
    let mut next = session.clone();
    for j in &update.judgments {
        match next
            .governance
            .judgments
            .iter_mut()
            .find(|x| x.indicator == j.indicator)
        {
            Some(slot) => *slot = j.clone(),
            None => next.governance.judgments.push(j.clone()),
        }
    }
    next.governance
        .judgments
        .sort_by_key(|j| j.indicator.index());
    refresh_governance(&mut next)?;
    let after = governance_snapshot(&next);
    *session = next;
    Ok(AuditRecord {
        actor: actor.to_string(),
        action: AuditAction::ScoreEdit,
        target: "governance".to_string(),
        before,
        after,
        note: update.note.clone(),
    })
}

fn check_bank(session: &Session, bank: &BankManifest) -> Result<(), WorkflowError> {
    if session.bank_version != bank.version {
        return Err(WorkflowError::BankMismatch {
            session: session.bank_version.clone(),
            bank: bank.version.clone(),
        });
    }
    Ok(())
}

/// Recompute every principle result from the answers. Principles without
/// answers drop out. A final level that an analyst overrode (with a note)
/// is kept; otherwise the final level follows the suggestion.
fn refresh_deep_dive(session: &mut Session, bank: &BankManifest) -> Result<(), WorkflowError> {
    let mut by_principle: BTreeMap<Principle, Vec<i64>> = BTreeMap::new();
    for (id, answer) in &session.deep_dive.answers {
        let q = bank
            .question(id)
            .ok_or_else(|| WorkflowError::UnknownQuestion(id.clone()))?;
        by_principle
            .entry(q.principle)
            .or_default()
            .push(i64::from(answer.value));
    }
    let mut results = BTreeMap::new();
    for (principle, scores) in by_principle {
        let (average, suggested) = scoring::principle_result(&scores)?;
        let previous = session.deep_dive.principle_results.get(&principle);
        let kept = previous.filter(|r| {
            r.is_overridden()
                && r.override_note
                    .as_deref()
                    .is_some_and(|n| !n.trim().is_empty())
        });
        let final_level = kept.map_or(suggested, |r| r.final_level);
        results.insert(
            principle,
            PrincipleResult {
                average,
                answered: scores.len(),
                suggested_level: suggested,
                final_level,
                // an override that now agrees with the suggestion is spent
                override_note: kept
                    .filter(|_| final_level != suggested)
                    .and_then(|r| r.override_note.clone()),
            },
        );
    }
    session.deep_dive.principle_results = results;
    Ok(())
}

/// Set or remove rubric answers and recompute per-principle averages.
pub fn update_answers(
    session: &mut Session,
    bank: &BankManifest,
    update: &AnswersUpdate,
    actor: &str,
) -> Result<AuditRecord, WorkflowError> {
    check_bank(session, bank)?;
    let before = deep_dive_snapshot(session);
    let mut next = session.clone();
    for (id, answer) in &update.answers {
        if bank.question(id).is_none() {
            return Err(WorkflowError::UnknownQuestion(id.clone()));
        }
        match answer {
            Some(a) => {
                let score = RubricScore::new(a.value, a.evidence.clone())
                    .ok_or(ScoringError::RubricRange(a.value))?;
                next.deep_dive.answers.insert(id.clone(), score);
            }
            None => {
                next.deep_dive.answers.remove(id);
            }
        }
    }
    if let Some(metrics) = &update.disclosed_metrics {
        if let Some(unknown) = metrics.iter().find(|m| bank.metric(m).is_none()) {
            return Err(WorkflowError::UnknownMetric(unknown.clone()));
        }
        next.deep_dive.disclosed_metrics = metrics.clone();
    }
    if update.system_category.is_some() {
        next.deep_dive.system_category = update.system_category;
    }
    refresh_deep_dive(&mut next, bank)?;
    let after = deep_dive_snapshot(&next);
    *session = next;
    Ok(AuditRecord {
        actor: actor.to_string(),
        action: AuditAction::ScoreEdit,
        target: "deep_dive.answers".to_string(),
        before,
        after,
        note: update.note.clone(),
    })
}

/// Set the final level of a principle. Choosing the suggested level clears
/// the override.
pub fn override_final_level(
    session: &mut Session,
    principle: Principle,
    level: FinalLevel,
    note: &str,
    actor: &str,
) -> Result<AuditRecord, WorkflowError> {
    if note.trim().is_empty() {
        return Err(ScoringError::NoteRequired.into());
    }
    let result = session
        .deep_dive
        .principle_results
        .get_mut(&principle)
        .ok_or(WorkflowError::NoResult(principle))?;
    let before =
        json!({ "suggested_level": result.suggested_level, "final_level": result.final_level });
    result.final_level = level;
    result.override_note = (level != result.suggested_level).then(|| note.to_string());
    Ok(AuditRecord {
        actor: actor.to_string(),
        action: AuditAction::FinalLevelOverride,
        target: format!(
            "deep_dive.principle_results.{}.final_level",
            principle.as_str()
        ),
        before,
        after: json!({ "suggested_level": result.suggested_level, "final_level": level }),
        note: note.to_string(),
    })
}

/// Recompute every derived value of a session from its inputs. Deep-dive
/// results are only recomputed when the session's bank is supplied.
pub fn recompute(session: &mut Session, bank: Option<&BankManifest>) -> Result<(), WorkflowError> {
    let config_issues = session.config.validate();
    if !config_issues.is_empty() {
        return Err(ScoringError::InvalidConfig(config_issues).into());
    }
    let cfg = session.config.clone();
    for (i, profile) in session.use_cases.iter_mut().enumerate() {
        scoring::refresh_use_case(profile, &cfg).map_err(|e| match e {
            ScoringError::ImpactTopics(v) => WorkflowError::Invalid(
                v.into_iter()
                    .map(|v| v.nested(&format!("use_cases[{i}]")))
                    .collect(),
            ),
            other => other.into(),
        })?;
    }
    let gov_issues: Vec<_> = session
        .governance
        .validate()
        .into_iter()
        .map(|v| v.nested("governance"))
        .collect();
    if !gov_issues.is_empty() {
        return Err(WorkflowError::Invalid(gov_issues));
    }
    refresh_governance(session)?;
    if let Some(bank) = bank {
        check_bank(session, bank)?;
        if let Some(m) = session
            .deep_dive
            .disclosed_metrics
            .iter()
            .find(|m| bank.metric(m).is_none())
        {
            return Err(WorkflowError::UnknownMetric(m.clone()));
        }
        refresh_deep_dive(session, bank)?;
    }
    Ok(())
}

/// Problems with stored derived values: anything [`recompute`] would change.
pub fn stale_values(
    session: &Session,
    bank: Option<&BankManifest>,
) -> Result<Vec<String>, WorkflowError> {
    let mut fresh = session.clone();
    recompute(&mut fresh, bank)?;
    let mut out = Vec::new();
    for (old, new) in session.use_cases.iter().zip(&fresh.use_cases) {
        if old.materiality_default != new.materiality_default {
            out.push(format!("use_cases.{}.materiality_default", old.id));
        }
    }
    if session.governance.score != fresh.governance.score
        || session.governance.level != fresh.governance.level
    {
        out.push("governance".to_string());
    }
    if bank.is_some() && session.deep_dive.principle_results != fresh.deep_dive.principle_results {
        out.push("deep_dive.principle_results".to_string());
    }
    Ok(out)
}

/// Accept a whole edited session, recompute it, and describe every change
/// to a level or score as audit records.
pub fn replace_session(
    current: &Session,
    mut incoming: Session,
    bank: Option<&BankManifest>,
    actor: &str,
    note: &str,
) -> Result<(Session, Vec<AuditRecord>), WorkflowError> {
    recompute(&mut incoming, bank)?;
    let mut records = Vec::new();
    let mut push = |action, target: String, before, after| {
        records.push(AuditRecord {
            actor: actor.to_string(),
            action,
            target,
            before,
            after,
            note: note.to_string(),
        })
    };
    let cfg = &incoming.config;
    let snapshot = |p: &UseCaseProfile| match scoring::score_use_case(p, cfg) {
        Ok(score) => use_case_snapshot(p, &score),
        Err(_) => Value::Null,
    };
    let materiality =
        |p: &UseCaseProfile| json!({ "adjusted": p.materiality_adjusted, "note": p.override_note });
    for new in &incoming.use_cases {
        match current.use_case(&new.id) {
            None => push(
                AuditAction::ScoreEdit,
                format!("use_cases.{}", new.id),
                Value::Null,
                snapshot(new),
            ),
            Some(old) => {
                let (a, b) = (snapshot(old), snapshot(new));
                if a != b {
                    push(
                        AuditAction::ScoreEdit,
                        format!("use_cases.{}.inputs", new.id),
                        a,
                        b,
                    );
                }
                let (a, b) = (materiality(old), materiality(new));
                if a != b {
                    push(
                        AuditAction::MaterialityOverride,
                        format!("use_cases.{}.materiality", new.id),
                        a,
                        b,
                    );
                }
            }
        }
    }
    for old in &current.use_cases {
        if incoming.use_case(&old.id).is_none() {
            push(
                AuditAction::ScoreEdit,
                format!("use_cases.{}", old.id),
                snapshot(old),
                Value::Null,
            );
        }
    }
    if current.governance.judgments != incoming.governance.judgments {
        push(
            AuditAction::ScoreEdit,
            "governance".to_string(),
            governance_snapshot(current),
            governance_snapshot(&incoming),
        );
    }
    let answers_changed = current.deep_dive.answers != incoming.deep_dive.answers
        || current.deep_dive.disclosed_metrics != incoming.deep_dive.disclosed_metrics;
    if answers_changed {
        push(
            AuditAction::ScoreEdit,
            "deep_dive.answers".to_string(),
            deep_dive_snapshot(current),
            deep_dive_snapshot(&incoming),
        );
    }
    let final_of = |s: &Session, p: &Principle| {
        s.deep_dive
            .principle_results
            .get(p)
            .map(|r| json!({ "suggested_level": r.suggested_level, "final_level": r.final_level, "note": r.override_note }))
    };
    let principles: BTreeSet<_> = current
        .deep_dive
        .principle_results
        .keys()
        .chain(incoming.deep_dive.principle_results.keys())
        .collect();
    for p in principles {
        let old = current.deep_dive.principle_results.get(p);
        let new = incoming.deep_dive.principle_results.get(p);
        let overridden = |r: Option<&PrincipleResult>| {
            r.filter(|r| r.is_overridden())
                .map(|r| (r.final_level, r.override_note.clone()))
        };
        if overridden(old) != overridden(new) {
            push(
                AuditAction::FinalLevelOverride,
                format!("deep_dive.principle_results.{}.final_level", p.as_str()),
                final_of(current, p).unwrap_or(Value::Null),
                final_of(&incoming, p).unwrap_or(Value::Null),
            );
        }
    }
    Ok((incoming, records))
}

/// Start a new session lineage under a different config. The copy is
/// recomputed and its journal opens with the config change.
pub fn fork_with_config(
    parent: &Session,
    config: ScoringConfig,
    bank: Option<&BankManifest>,
    actor: &str,
    note: &str,
) -> Result<(Session, AuditRecord), WorkflowError> {
    let mut child = parent.clone();
    let record = AuditRecord {
        actor: actor.to_string(),
        action: AuditAction::ConfigChange,
        target: "config".to_string(),
        before: serde_json::to_value(&parent.config).expect("config serializes"),
        after: serde_json::to_value(&config).expect("config serializes"),
        note: note.to_string(),
    };
    child.id = String::new();
    child.parent = Some(parent.id.clone());
    child.status = crate::model::SessionStatus::Draft;
    child.revision = 0;
    child.config = config;
    recompute(&mut child, bank)?;
    Ok((child, record))
}

/// Every governance indicator, for building a full judgment update.
pub fn all_judgments(met: &[GovernanceIndicator]) -> Vec<IndicatorJudgment> {
    GovernanceIndicator::ALL
        .iter()
        .map(|i| IndicatorJudgment {
            indicator: *i,
            met: met.contains(i),
            evidence: String::new(),
        })
        .collect()
}
