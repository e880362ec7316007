use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::taxonomy::AuditAction;

/// An audit event that has not yet been committed. The store assigns the
/// id and the timestamp when it appends the record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub actor: String,
    pub action: AuditAction,
    /// Dotted path of the edited field, e.g. `use_cases.fin-fraud.materiality`.
    pub target: String,
    pub before: Value,
    pub after: Value,
    #[serde(default)]
    pub note: String,
}

/// A committed, immutable audit journal line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditEntry {
    pub id: String,
    /// Position in the journal, starting at 1.
    pub seq: u64,
    pub timestamp: DateTime<Utc>,
    pub actor: String,
    pub action: AuditAction,
    pub target: String,
    pub before: Value,
    pub after: Value,
    #[serde(default)]
    pub note: String,
}

impl AuditEntry {
    pub fn from_record(
        record: AuditRecord,
        id: String,
        seq: u64,
        timestamp: DateTime<Utc>,
    ) -> Self {
        Self {
            id,
            seq,
            timestamp,
            actor: record.actor,
            action: record.action,
            target: record.target,
            before: record.before,
            after: record.after,
            note: record.note,
        }
    }
}
