//! The scoring engine: impact level, materiality, governance score, rubric
//! bands, principle averages and classifier metrics.
//!
//! Every function here is pure. Classification always uses the unrounded
//! score; rounding is a display concern.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::model::{
    mark_violations, AuditAction, AuditRecord, EsgTopic, FinalLevel, GovernanceLevel, ImpactLevel,
    ImpactMark, ImpactScope, MaterialityLevel, RegulatoryFlag, RubricBand, ScoringConfig,
    UseCaseProfile, Validate, Violation, GOVERNANCE_INDICATOR_COUNT,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScoringError {
    #[error("impact marks must cover exactly the 9 environmental and social topics")]
    ImpactTopics(Vec<Violation>),
    #[error("expected {GOVERNANCE_INDICATOR_COUNT} governance judgments, got {0}")]
    JudgmentCount(usize),
    #[error("rubric score {0} is outside 0..=5")]
    RubricRange(i64),
    #[error("no answered sub-questions; the principle cannot be scored")]
    NoAnswers,
    #[error("an override requires a non-empty note")]
    NoteRequired,
    #[error("invalid scoring configuration")]
    InvalidConfig(Vec<Violation>),
}

impl ScoringError {
    pub fn code(&self) -> &'static str {
        match self {
            ScoringError::ImpactTopics(_) => "impact_marks.topics",
            ScoringError::JudgmentCount(_) => "governance.judgment_count",
            ScoringError::RubricRange(_) => "rubric.range",
            ScoringError::NoAnswers => "principle.no_answers",
            ScoringError::NoteRequired => "override.note.required",
            ScoringError::InvalidConfig(_) => "config.invalid",
        }
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            ScoringError::ImpactTopics(v) | ScoringError::InvalidConfig(v) => v,
            _ => &[],
        }
    }
}

/// Result of reducing a set of impact marks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImpactAssessment {
    /// Number of topics marked +, - or +/-.
    pub impacted: u32,
    pub level: ImpactLevel,
}

/// Impact level for a count of impacted topics.
pub fn classify_impact_count(impacted: u32) -> ImpactLevel {
    if impacted >= 8 {
        ImpactLevel::High
    } else if impacted > 3 {
        ImpactLevel::Medium
    } else {
        ImpactLevel::Low
    }
}

pub fn impact_level(
    marks: &BTreeMap<EsgTopic, ImpactMark>,
) -> Result<ImpactAssessment, ScoringError> {
    let violations = mark_violations(marks);
    if !violations.is_empty() {
        return Err(ScoringError::ImpactTopics(violations));
    }
    let impacted = marks.values().filter(|m| m.is_impacted()).count() as u32;
    Ok(ImpactAssessment {
        impacted,
        level: classify_impact_count(impacted),
    })
}

/// The three component scores, their weighted total and the resulting level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialityBreakdown {
    pub risk_score: f64,
    pub impact_score: f64,
    pub scope_score: f64,
    pub total: f64,
    pub level: MaterialityLevel,
}

pub fn check_config(cfg: &ScoringConfig) -> Result<(), ScoringError> {
    let violations = cfg.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ScoringError::InvalidConfig(violations))
    }
}

pub fn classify_materiality(total: f64, cfg: &ScoringConfig) -> MaterialityLevel {
    if total >= cfg.t_high {
        MaterialityLevel::High
    } else if total >= cfg.t_low {
        MaterialityLevel::Medium
    } else {
        MaterialityLevel::Low
    }
}

pub fn materiality(
    flag: RegulatoryFlag,
    impact: ImpactLevel,
    scope: ImpactScope,
    cfg: &ScoringConfig,
) -> Result<MaterialityBreakdown, ScoringError> {
    check_config(cfg)?;
    let risk_score = cfg.regulatory_encoding.value(flag);
    let impact_score = cfg.impact_encoding.value(impact);
    let scope_score = cfg.scope_encoding.value(scope);
    let w = &cfg.use_case_weights;
    let total = w.risk * risk_score + w.impact * impact_score + w.scope * scope_score;
    Ok(MaterialityBreakdown {
        risk_score,
        impact_score,
        scope_score,
        total,
        level: classify_materiality(total, cfg),
    })
}

/// Everything derived from one use-case profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UseCaseScore {
    pub impact: ImpactAssessment,
    pub materiality: MaterialityBreakdown,
}

pub fn score_use_case(
    profile: &UseCaseProfile,
    cfg: &ScoringConfig,
) -> Result<UseCaseScore, ScoringError> {
    let impact = impact_level(&profile.impact_marks)?;
    let materiality = materiality(
        profile.regulatory_flag,
        impact.level,
        profile.impact_scope,
        cfg,
    )?;
    Ok(UseCaseScore {
        impact,
        materiality,
    })
}

/// Recompute `materiality_default` in place. The adjusted level is left alone.
pub fn refresh_use_case(
    profile: &mut UseCaseProfile,
    cfg: &ScoringConfig,
) -> Result<UseCaseScore, ScoringError> {
    let score = score_use_case(profile, cfg)?;
    profile.materiality_default = score.materiality.level;
    Ok(score)
}

/// Record a human materiality level next to the computed default.
///
/// The default is never touched. An override equal to the default is still
/// recorded and audited.
pub fn override_materiality(
    profile: &UseCaseProfile,
    new_level: MaterialityLevel,
    note: &str,
    actor: &str,
) -> Result<(UseCaseProfile, AuditRecord), ScoringError> {
    if note.trim().is_empty() {
        return Err(ScoringError::NoteRequired);
    }
    let before = profile.effective_materiality();
    let mut updated = profile.clone();
    updated.materiality_adjusted = Some(new_level);
    updated.override_note = Some(note.to_string());
    let record = AuditRecord {
        actor: actor.to_string(),
        action: AuditAction::MaterialityOverride,
        target: format!("use_cases.{}.materiality", profile.id),
        before: json!({
            "default": profile.materiality_default,
            "adjusted": profile.materiality_adjusted,
            "effective": before,
        }),
        after: json!({
            "default": updated.materiality_default,
            "adjusted": new_level,
            "effective": new_level,
        }),
        note: note.to_string(),
    };
    Ok((updated, record))
}

pub fn classify_governance(score: f64) -> GovernanceLevel {
    if score >= 8.0 {
        GovernanceLevel::High
    } else if score > 3.0 {
        GovernanceLevel::Medium
    } else {
        GovernanceLevel::Low
    }
}

/// Weighted count of met indicators and its level. `judgments` is in
/// catalogue order.
pub fn governance_score(
    judgments: &[bool],
    cfg: &ScoringConfig,
) -> Result<(f64, GovernanceLevel), ScoringError> {
    if judgments.len() != GOVERNANCE_INDICATOR_COUNT {
        return Err(ScoringError::JudgmentCount(judgments.len()));
    }
    check_config(cfg)?;
    let score: f64 = judgments
        .iter()
        .zip(cfg.governance_weights.iter())
        .filter(|(met, _)| **met)
        .fold(0.0, |acc, (_, w)| acc + w);
    Ok((score, classify_governance(score)))
}

pub fn rubric_band(value: i64) -> Result<RubricBand, ScoringError> {
    RubricBand::from_value(value).ok_or(ScoringError::RubricRange(value))
}

pub fn classify_final(average: f64) -> FinalLevel {
    if average >= 4.5 {
        FinalLevel::Strong
    } else if average >= 3.0 {
        FinalLevel::Moderate
    } else if average >= 1.5 {
        FinalLevel::Weak
    } else {
        FinalLevel::Unacceptable
    }
}

/// Mean of the answered sub-question scores and the suggested final level.
pub fn principle_result(scores: &[i64]) -> Result<(f64, FinalLevel), ScoringError> {
    if scores.is_empty() {
        return Err(ScoringError::NoAnswers);
    }
    for s in scores {
        rubric_band(*s)?;
    }
    let average = scores.iter().sum::<i64>() as f64 / scores.len() as f64;
    Ok((average, classify_final(average)))
}

/// Classifier quality figures. A component is `None` when its denominator is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassificationMetrics {
    pub accuracy: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub fscore: Option<f64>,
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

pub fn classification_metrics(tp: u64, tn: u64, fp: u64, fn_: u64) -> ClassificationMetrics {
    let accuracy = ratio(tp + tn, tp + tn + fp + fn_);
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let fscore = match (precision, recall) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * (p * r) / (p + r)),
        _ => None,
    };
    ClassificationMetrics {
        accuracy,
        precision,
        recall,
        fscore,
    }
}

/// Round to two decimals for display.
pub fn display2(value: f64) -> String {
    format!("{value:.2}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::blank_marks;
    use proptest::prelude::*;

    // Independent oracle: literal encoding table and if-chains, no engine calls.
    fn oracle_materiality(flag: &str, impact: &str, scope: &str) -> &'static str {
        let r = match flag {
            "unacceptable" => 1.5,
            "high" => 1.0,
            "medium" | "not_determined" => 0.5,
            _ => 0.0,
        };
        let i = match impact {
            "high" => 1.0,
            "medium" => 0.5,
            _ => 0.0,
        };
        let s = if scope == "systemic" { 1.0 } else { 0.5 };
        let f = r + i + s;
        if f >= 2.0 {
            "high"
        } else if f >= 1.0 {
            "medium"
        } else {
            "low"
        }
    }

    // Frozen from hand arithmetic over the default encodings.
    const FROZEN: [(&str, &str, &str, f64, &str); 30] = [
        ("unacceptable", "high", "industry", 3.0, "high"),
        ("unacceptable", "high", "systemic", 3.5, "high"),
        ("unacceptable", "medium", "industry", 2.5, "high"),
        ("unacceptable", "medium", "systemic", 3.0, "high"),
        ("unacceptable", "low", "industry", 2.0, "high"),
        ("unacceptable", "low", "systemic", 2.5, "high"),
        ("high", "high", "industry", 2.5, "high"),
        ("high", "high", "systemic", 3.0, "high"),
        ("high", "medium", "industry", 2.0, "high"),
        ("high", "medium", "systemic", 2.5, "high"),
        ("high", "low", "industry", 1.5, "medium"),
        ("high", "low", "systemic", 2.0, "high"),
        ("medium", "high", "industry", 2.0, "high"),
        ("medium", "high", "systemic", 2.5, "high"),
        ("medium", "medium", "industry", 1.5, "medium"),
        ("medium", "medium", "systemic", 2.0, "high"),
        ("medium", "low", "industry", 1.0, "medium"),
        ("medium", "low", "systemic", 1.5, "medium"),
        ("low", "high", "industry", 1.5, "medium"),
        ("low", "high", "systemic", 2.0, "high"),
        ("low", "medium", "industry", 1.0, "medium"),
        ("low", "medium", "systemic", 1.5, "medium"),
        ("low", "low", "industry", 0.5, "low"),
        ("low", "low", "systemic", 1.0, "medium"),
        ("not_determined", "high", "industry", 2.0, "high"),
        ("not_determined", "high", "systemic", 2.5, "high"),
        ("not_determined", "medium", "industry", 1.5, "medium"),
        ("not_determined", "medium", "systemic", 2.0, "high"),
        ("not_determined", "low", "industry", 1.0, "medium"),
        ("not_determined", "low", "systemic", 1.5, "medium"),
    ];

    fn marks_with(impacted: usize) -> BTreeMap<EsgTopic, ImpactMark> {
        let mut marks = blank_marks();
        for topic in EsgTopic::IMPACT_TOPICS.iter().take(impacted) {
            marks.insert(*topic, ImpactMark::Negative);
        }
        marks
    }

    #[test]
    fn impact_level_boundaries() {
        let expect = |n, level| {
            let got = impact_level(&marks_with(n)).unwrap();
            assert_eq!(got.impacted as usize, n);
            assert_eq!(got.level, level, "N={n}");
        };
        expect(9, ImpactLevel::High);
        expect(8, ImpactLevel::High);
        expect(7, ImpactLevel::Medium);
        expect(4, ImpactLevel::Medium);
        expect(3, ImpactLevel::Low);
        expect(0, ImpactLevel::Low);
    }

    #[test]
    fn impact_level_rejects_wrong_topics() {
        let mut marks = marks_with(2);
        marks.remove(&EsgTopic::E2);
        let err = impact_level(&marks).unwrap_err();
        assert_eq!(err.code(), "impact_marks.topics");
        marks.insert(EsgTopic::E2, ImpactMark::Both);
        marks.insert(EsgTopic::G3, ImpactMark::Both);
        assert!(impact_level(&marks).is_err());
    }

    #[test]
    fn materiality_matches_frozen_table_and_oracle() {
        let cfg = ScoringConfig::default();
        for (flag, impact, scope, total, level) in FROZEN {
            let b = materiality(
                flag.parse().unwrap(),
                impact.parse().unwrap(),
                scope.parse().unwrap(),
                &cfg,
            )
            .unwrap();
            assert_eq!(b.total, total, "{flag}/{impact}/{scope}");
            assert_eq!(b.level.as_str(), level);
            assert_eq!(oracle_materiality(flag, impact, scope), level);
        }
    }

    #[test]
    fn materiality_worked_examples() {
        let cfg = ScoringConfig::default();
        let b = materiality(
            RegulatoryFlag::High,
            ImpactLevel::High,
            ImpactScope::Systemic,
            &cfg,
        )
        .unwrap();
        assert_eq!(
            (b.risk_score, b.impact_score, b.scope_score, b.total),
            (1.0, 1.0, 1.0, 3.0)
        );
        assert_eq!(b.level, MaterialityLevel::High);
        let b = materiality(
            RegulatoryFlag::Low,
            ImpactLevel::Low,
            ImpactScope::Industry,
            &cfg,
        )
        .unwrap();
        assert_eq!(b.total, 0.5);
        assert_eq!(b.level, MaterialityLevel::Low);
    }

    #[test]
    fn materiality_rejects_bad_config() {
        let cfg = ScoringConfig {
            t_low: 3.0,
            ..ScoringConfig::default()
        };
        let err = materiality(
            RegulatoryFlag::Low,
            ImpactLevel::Low,
            ImpactScope::Industry,
            &cfg,
        )
        .unwrap_err();
        assert_eq!(err.code(), "config.invalid");
    }

    fn profile(default: MaterialityLevel) -> UseCaseProfile {
        let mut p = UseCaseProfile::new(
            "uc",
            "Energy",
            "Energy efficiency",
            "",
            RegulatoryFlag::Medium,
            ImpactScope::Industry,
        );
        p.materiality_default = default;
        p
    }

    #[test]
    fn override_keeps_default() {
        let p = profile(MaterialityLevel::Medium);
        let (updated, record) = override_materiality(
            &p,
            MaterialityLevel::High,
            "sector regulator signal",
            "analyst",
        )
        .unwrap();
        assert_eq!(updated.materiality_default, MaterialityLevel::Medium);
        assert_eq!(updated.materiality_adjusted, Some(MaterialityLevel::High));
        assert_eq!(
            updated.override_note.as_deref(),
            Some("sector regulator signal")
        );
        assert_eq!(record.action, AuditAction::MaterialityOverride);
        assert_eq!(record.before["effective"], "medium");
        assert_eq!(record.after["effective"], "high");
        assert_eq!(record.actor, "analyst");
    }

    #[test]
    fn override_equal_to_default_is_still_audited() {
        let p = profile(MaterialityLevel::Medium);
        let (updated, record) =
            override_materiality(&p, MaterialityLevel::Medium, "confirmed", "a").unwrap();
        assert_eq!(updated.materiality_adjusted, Some(MaterialityLevel::Medium));
        assert_eq!(record.note, "confirmed");
    }

    #[test]
    fn override_needs_note() {
        let p = profile(MaterialityLevel::Low);
        let err = override_materiality(&p, MaterialityLevel::High, " ", "a").unwrap_err();
        assert_eq!(err.code(), "override.note.required");
    }

    fn oracle_governance(bits: u32) -> &'static str {
        let count = bits.count_ones();
        if count >= 8 {
            "high"
        } else if count >= 4 {
            "medium"
        } else {
            "low"
        }
    }

    #[test]
    fn governance_exhaustive() {
        let cfg = ScoringConfig::default();
        for bits in 0u32..1024 {
            let judgments: Vec<bool> = (0..10).map(|i| bits & (1 << i) != 0).collect();
            let (score, level) = governance_score(&judgments, &cfg).unwrap();
            assert_eq!(score, f64::from(bits.count_ones()));
            assert_eq!(level.as_str(), oracle_governance(bits), "bits={bits:#b}");
        }
    }

    #[test]
    fn governance_examples() {
        let cfg = ScoringConfig::default();
        let v = |n: usize| -> Vec<bool> { (0..10).map(|i| i < n).collect() };
        let (none, _) = governance_score(&v(0), &cfg).unwrap();
        assert!(
            none == 0.0 && none.is_sign_positive(),
            "prints as 0, not -0"
        );
        assert_eq!(
            governance_score(&v(10), &cfg).unwrap(),
            (10.0, GovernanceLevel::High)
        );
        assert_eq!(
            governance_score(&v(3), &cfg).unwrap(),
            (3.0, GovernanceLevel::Low)
        );
        assert_eq!(
            governance_score(&v(5), &cfg).unwrap(),
            (5.0, GovernanceLevel::Medium)
        );
        assert_eq!(
            governance_score(&v(8), &cfg).unwrap(),
            (8.0, GovernanceLevel::High)
        );
        let err = governance_score(&[true; 9], &cfg).unwrap_err();
        assert_eq!(err.code(), "governance.judgment_count");
    }

    #[test]
    fn non_unit_weights_leave_no_gap() {
        assert_eq!(classify_governance(7.5), GovernanceLevel::Medium);
        assert_eq!(classify_governance(3.0001), GovernanceLevel::Medium);
        assert_eq!(classify_governance(7.9999), GovernanceLevel::Medium);
    }

    #[test]
    fn rubric_bands() {
        assert_eq!(rubric_band(0).unwrap(), RubricBand::NotDisclosed);
        assert_eq!(rubric_band(1).unwrap(), RubricBand::Minimal);
        assert_eq!(rubric_band(3).unwrap(), RubricBand::Moderate);
        assert_eq!(rubric_band(5).unwrap(), RubricBand::Comprehensive);
        assert_eq!(rubric_band(6).unwrap_err().code(), "rubric.range");
    }

    #[test]
    fn principle_examples() {
        assert_eq!(
            principle_result(&[0, 0, 0]).unwrap(),
            (0.0, FinalLevel::Unacceptable)
        );
        assert_eq!(
            principle_result(&[5, 4, 4, 5]).unwrap(),
            (4.5, FinalLevel::Strong)
        );
        assert_eq!(
            principle_result(&[3, 3, 3]).unwrap(),
            (3.0, FinalLevel::Moderate)
        );
        assert_eq!(
            principle_result(&[]).unwrap_err().code(),
            "principle.no_answers"
        );
        assert_eq!(
            principle_result(&[1, 7]).unwrap_err().code(),
            "rubric.range"
        );
        assert_eq!(classify_final(1.5), FinalLevel::Weak);
        assert_eq!(classify_final(1.4999), FinalLevel::Unacceptable);
        assert_eq!(classify_final(2.9999), FinalLevel::Weak);
        assert_eq!(classify_final(4.4999), FinalLevel::Moderate);
    }

    #[test]
    fn metrics_examples() {
        let m = classification_metrics(50, 40, 5, 5);
        assert_eq!(m.accuracy, Some(0.9));
        assert!((m.precision.unwrap() - 50.0 / 55.0).abs() < 1e-12);
        assert!((m.recall.unwrap() - 0.909_090_909_090_909).abs() < 1e-12);
        assert!((m.fscore.unwrap() - 0.909_090_909_090_909).abs() < 1e-12);

        let perfect = classification_metrics(7, 3, 0, 0);
        assert_eq!(perfect.precision, Some(1.0));
        assert_eq!(perfect.recall, Some(1.0));
        assert_eq!(perfect.fscore, Some(1.0));

        let degenerate = classification_metrics(0, 4, 2, 3);
        assert_eq!(degenerate.precision, Some(0.0));
        assert_eq!(degenerate.recall, Some(0.0));
        assert_eq!(degenerate.fscore, None);

        let empty = classification_metrics(0, 0, 0, 0);
        assert_eq!(
            empty,
            ClassificationMetrics {
                accuracy: None,
                precision: None,
                recall: None,
                fscore: None
            }
        );
    }

    fn dyadic() -> impl Strategy<Value = f64> {
        (0u32..=8).prop_map(|k| f64::from(k) / 8.0)
    }

    proptest! {
        #[test]
        fn materiality_partition_is_total(total in -1.0f64..5.0) {
            let cfg = ScoringConfig::default();
            let level = classify_materiality(total, &cfg);
            let hits = [total >= 2.0, (1.0..2.0).contains(&total), total < 1.0];
            prop_assert_eq!(hits.iter().filter(|h| **h).count(), 1);
            let expected = if hits[0] { MaterialityLevel::High } else if hits[1] { MaterialityLevel::Medium } else { MaterialityLevel::Low };
            prop_assert_eq!(level, expected);
        }

        #[test]
        fn raising_an_encoding_never_lowers_level(
            r in dyadic(), i in dyadic(), s in dyadic(), bump in 1u32..8,
            flag_idx in 0usize..5, impact_idx in 0usize..3, scope_idx in 0usize..2, which in 0usize..3,
        ) {
            let flag = RegulatoryFlag::ALL[flag_idx];
            let impact = ImpactLevel::ALL[impact_idx];
            let scope = ImpactScope::ALL[scope_idx];
            let mut cfg = ScoringConfig::default();
            *cfg.regulatory_encoding.value_mut(flag) = r;
            *cfg.impact_encoding.value_mut(impact) = i;
            *cfg.scope_encoding.value_mut(scope) = s;
            let before = materiality(flag, impact, scope, &cfg).unwrap().level;
            let delta = f64::from(bump) / 8.0;
            match which {
                0 => { let v = cfg.regulatory_encoding.value_mut(flag); *v = (*v + delta).min(1.5); }
                1 => { let v = cfg.impact_encoding.value_mut(impact); *v = (*v + delta).min(1.0); }
                _ => { let v = cfg.scope_encoding.value_mut(scope); *v = (*v + delta).min(1.0); }
            }
            let after = materiality(flag, impact, scope, &cfg).unwrap().level;
            prop_assert!(after >= before);
        }

        #[test]
        fn joint_rescaling_preserves_levels(exp in -3i32..4, t_low in 1u32..12, gap in 1u32..12) {
            let factor = 2f64.powi(exp);
            let mut cfg = ScoringConfig::default();
            cfg.t_low = f64::from(t_low) / 4.0;
            cfg.t_high = cfg.t_low + f64::from(gap) / 4.0;
            let scaled = cfg.rescaled(factor);
            for flag in RegulatoryFlag::ALL {
                for impact in ImpactLevel::ALL {
                    for scope in ImpactScope::ALL {
                        let a = materiality(*flag, *impact, *scope, &cfg).unwrap().level;
                        let b = materiality(*flag, *impact, *scope, &scaled).unwrap().level;
                        prop_assert_eq!(a, b);
                    }
                }
            }
        }

        #[test]
        fn random_marks_reduce_to_count(raw in proptest::collection::vec(0usize..4, 9)) {
            let marks: BTreeMap<_, _> = EsgTopic::IMPACT_TOPICS
                .iter()
                .zip(&raw)
                .map(|(t, m)| (*t, ImpactMark::ALL[*m]))
                .collect();
            let expected = raw.iter().filter(|m| ImpactMark::ALL[**m] != ImpactMark::NotApplicable).count() as u32;
            let got = impact_level(&marks).unwrap();
            prop_assert_eq!(got.impacted, expected);
            prop_assert_eq!(got.level, classify_impact_count(expected));
        }

        #[test]
        fn principle_average_is_the_mean(scores in proptest::collection::vec(0i64..=5, 1..20)) {
            let (avg, level) = principle_result(&scores).unwrap();
            let mean = scores.iter().map(|s| *s as f64).sum::<f64>() / scores.len() as f64;
            prop_assert!((avg - mean).abs() < 1e-12);
            prop_assert_eq!(level, classify_final(avg));
        }
    }
}
