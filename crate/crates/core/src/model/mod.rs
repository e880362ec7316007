//! Domain types. Pure data: no I/O, no scoring logic beyond the derivations
//! that define a type's invariants.

mod audit;
mod config;
mod deep_dive;
mod governance;
mod taxonomy;
mod use_case;
mod validate;

pub use audit::{AuditEntry, AuditRecord};
pub use config::{
    ImpactEncoding, RegulatoryEncoding, ScopeEncoding, ScoringConfig, UseCaseWeights,
    GOVERNANCE_INDICATOR_COUNT,
};
pub use deep_dive::{DeepDiveAssessment, PrincipleResult, RubricScore, RUBRIC_MAX};
pub use governance::{
    GovernanceAssessment, GovernanceIndicator, IndicatorCategory, IndicatorJudgment,
};
pub use taxonomy::{
    AuditAction, EsgTopic, FinalLevel, GovernanceLevel, ImpactLevel, ImpactMark, ImpactScope,
    MaterialityLevel, MetricDirection, Obligation, OrgType, Pillar, Principle, Provenance,
    RegulatoryFlag, RubricBand, SessionStatus, SystemCategory, UnknownVariant,
};
pub(crate) use use_case::mark_violations;
pub use use_case::{blank_marks, UseCaseProfile};
pub use validate::{Validate, Violation};
