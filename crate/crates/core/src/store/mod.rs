//! Session persistence with optimistic concurrency and an append-only audit
//! journal.
//!
//! The [`SessionStore`] trait is the only thing callers see. [`FileStore`]
//! keeps one canonical JSON document per session plus one JSON-lines audit
//! journal per session; [`MemoryStore`] has identical semantics and is used
//! by tests and ephemeral servers.

mod file;
mod memory;

use std::collections::BTreeSet;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::model::{
    AuditAction, AuditEntry, AuditRecord, DeepDiveAssessment, GovernanceAssessment, ScoringConfig,
    SessionStatus, UseCaseProfile, Validate, Violation,
};

pub use file::FileStore;
pub use memory::MemoryStore;

pub const ARCHIVE_SCHEMA: &str = "esgai.session-archive/v1";

/// One company assessment: the use-case board, the governance checklist and
/// the deep dive, scored under a frozen config snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Session {
    /// Assigned by the store when left empty at creation.
    #[serde(default)]
    pub id: String,
    pub company: String,
    pub bank_version: String,
    #[serde(default)]
    pub config: ScoringConfig,
    #[serde(default)]
    pub use_cases: Vec<UseCaseProfile>,
    pub governance: GovernanceAssessment,
    pub deep_dive: DeepDiveAssessment,
    #[serde(default = "draft")]
    pub status: SessionStatus,
    #[serde(default)]
    pub revision: u64,
    /// Session this one was forked from under a different config.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
    #[serde(default = "epoch")]
    pub created_at: DateTime<Utc>,
    #[serde(default = "epoch")]
    pub updated_at: DateTime<Utc>,
}

fn draft() -> SessionStatus {
    SessionStatus::Draft
}

fn epoch() -> DateTime<Utc> {
    DateTime::<Utc>::UNIX_EPOCH
}

impl Session {
    /// A fresh draft with a blank checklist and no deep-dive answers.
    pub fn new(
        company: impl Into<String>,
        bank_version: impl Into<String>,
        config: ScoringConfig,
        use_cases: Vec<UseCaseProfile>,
    ) -> Self {
        let company = company.into();
        let bank_version = bank_version.into();
        Self {
            id: String::new(),
            governance: GovernanceAssessment::blank(company.clone()),
            deep_dive: DeepDiveAssessment::new(company.clone(), bank_version.clone()),
            company,
            bank_version,
            config,
            use_cases,
            status: SessionStatus::Draft,
            revision: 0,
            parent: None,
            created_at: epoch(),
            updated_at: epoch(),
        }
    }

    pub fn use_case(&self, id: &str) -> Option<&UseCaseProfile> {
        self.use_cases.iter().find(|u| u.id == id)
    }

    pub fn use_case_mut(&mut self, id: &str) -> Option<&mut UseCaseProfile> {
        self.use_cases.iter_mut().find(|u| u.id == id)
    }

    /// Canonical on-disk encoding.
    pub fn to_json(&self) -> String {
        let mut out =
            serde_json::to_string_pretty(self).expect("session serialization is infallible");
        out.push('\n');
        out
    }

    pub fn summary(&self) -> SessionSummary {
        SessionSummary {
            id: self.id.clone(),
            company: self.company.clone(),
            bank_version: self.bank_version.clone(),
            status: self.status,
            revision: self.revision,
            parent: self.parent.clone(),
            updated_at: self.updated_at,
        }
    }
}

/// True for ids safe to use as file names.
pub fn is_valid_id(id: &str) -> bool {
    !id.is_empty()
        && id.len() <= 64
        && !id.starts_with('-')
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

impl Validate for Session {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.id.is_empty() && !is_valid_id(&self.id) {
            out.push(Violation::new(
                "session.id",
                "id",
                "ids use 1-64 ASCII letters, digits, `-` or `_` and do not start with `-`",
            ));
        }
        if self.company.trim().is_empty() {
            out.push(Violation::new(
                "session.company",
                "company",
                "company must not be empty",
            ));
        }
        if self.deep_dive.bank_version != self.bank_version {
            out.push(Violation::new(
                "session.bank_version",
                "deep_dive.bank_version",
                format!(
                    "deep dive uses bank `{}` but the session uses `{}`",
                    self.deep_dive.bank_version, self.bank_version
                ),
            ));
        }
        out.extend(
            self.config
                .validate()
                .into_iter()
                .map(|v| v.nested("config")),
        );
        let mut seen = BTreeSet::new();
        for (i, u) in self.use_cases.iter().enumerate() {
            if !seen.insert(u.id.as_str()) {
                out.push(Violation::new(
                    "use_case.duplicate_id",
                    format!("use_cases[{i}].id"),
                    format!("use case id `{}` appears more than once", u.id),
                ));
            }
            out.extend(
                u.validate()
                    .into_iter()
                    .map(|v| v.nested(&format!("use_cases[{i}]"))),
            );
        }
        out.extend(
            self.governance
                .validate()
                .into_iter()
                .map(|v| v.nested("governance")),
        );
        out.extend(
            self.deep_dive
                .validate()
                .into_iter()
                .map(|v| v.nested("deep_dive")),
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionSummary {
    pub id: String,
    pub company: String,
    pub bank_version: String,
    pub status: SessionStatus,
    pub revision: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
    pub updated_at: DateTime<Utc>,
}

/// Portable export of a session with its full audit journal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionArchive {
    pub schema: String,
    pub session: Session,
    pub audit: Vec<AuditEntry>,
}

impl SessionArchive {
    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.schema != ARCHIVE_SCHEMA {
            out.push(Violation::new(
                "archive.schema_version",
                "schema",
                format!("expected `{ARCHIVE_SCHEMA}`, got `{}`", self.schema),
            ));
        }
        if !is_valid_id(&self.session.id) {
            out.push(Violation::new(
                "session.id",
                "session.id",
                "archived sessions need a valid id",
            ));
        }
        if self.session.revision == 0 {
            out.push(Violation::new(
                "archive.revision",
                "session.revision",
                "revision starts at 1",
            ));
        }
        out.extend(
            self.session
                .validate()
                .into_iter()
                .map(|v| v.nested("session")),
        );
        for (i, e) in self.audit.iter().enumerate() {
            if e.seq != i as u64 + 1 {
                out.push(Violation::new(
                    "archive.audit_sequence",
                    format!("audit[{i}].seq"),
                    format!("expected sequence number {}, got {}", i + 1, e.seq),
                ));
            }
            if i > 0 && e.timestamp < self.audit[i - 1].timestamp {
                out.push(Violation::new(
                    "archive.audit_order",
                    format!("audit[{i}].timestamp"),
                    "audit entries must be in chronological order",
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StoreError {
    #[error("session `{id}` is at revision {actual}, not the expected {expected}")]
    Conflict {
        id: String,
        expected: u64,
        actual: u64,
    },
    #[error("session `{0}` does not exist")]
    NotFound(String),
    #[error("session `{0}` already exists")]
    AlreadyExists(String),
    #[error("session `{0}` is finalized and can no longer change")]
    Finalized(String),
    #[error(
        "the config snapshot of session `{0}` is frozen; fork the session to use a new config"
    )]
    ConfigFrozen(String),
    #[error("session is invalid")]
    Invalid(Vec<Violation>),
    #[error("storage failure at {path}: {message}")]
    Io { path: String, message: String },
    #[error("stored document {path} is unreadable: {message}")]
    Corrupt { path: String, message: String },
}

impl StoreError {
    pub fn code(&self) -> &'static str {
        match self {
            StoreError::Conflict { .. } => "store.conflict",
            StoreError::NotFound(_) => "store.not_found",
            StoreError::AlreadyExists(_) => "store.exists",
            StoreError::Finalized(_) => "store.finalized",
            StoreError::ConfigFrozen(_) => "store.config_frozen",
            StoreError::Invalid(_) => "session.invalid",
            StoreError::Io { .. } => "store.io",
            StoreError::Corrupt { .. } => "store.corrupt",
        }
    }

    pub fn details(&self) -> serde_json::Value {
        match self {
            StoreError::Conflict {
                id,
                expected,
                actual,
            } => {
                serde_json::json!({ "id": id, "expected_revision": expected, "current_revision": actual })
            }
            StoreError::NotFound(id)
            | StoreError::AlreadyExists(id)
            | StoreError::Finalized(id)
            | StoreError::ConfigFrozen(id) => serde_json::json!({ "id": id }),
            StoreError::Invalid(v) => serde_json::json!({ "violations": v }),
            StoreError::Io { path, .. } | StoreError::Corrupt { path, .. } => {
                serde_json::json!({ "path": path })
            }
        }
    }
}

/// Persistence contract shared by every backend.
///
/// Writes to one session are serialized through the revision check; writes to
/// different sessions are independent. Audit timestamps are assigned here,
/// never by callers.
pub trait SessionStore: Send + Sync {
    /// Insert a new session at revision 1. An empty id is replaced by a fresh
    /// one. `audit` is committed as the first journal entries.
    fn create_session(
        &self,
        session: Session,
        audit: Vec<AuditRecord>,
    ) -> Result<Session, StoreError>;

    fn get_session(&self, id: &str) -> Result<Session, StoreError>;

    /// Summaries ordered by id.
    fn list_sessions(&self) -> Result<Vec<SessionSummary>, StoreError>;

    /// Replace the stored session if it is still at `expected_revision`, and
    /// append `audit` to its journal. Returns the stored copy.
    fn save_session(
        &self,
        session: Session,
        expected_revision: u64,
        audit: Vec<AuditRecord>,
    ) -> Result<Session, StoreError>;

    /// The session's journal in commit order.
    fn audit_log(&self, id: &str) -> Result<Vec<AuditEntry>, StoreError>;

    /// Default config for new sessions.
    fn config(&self) -> Result<ScoringConfig, StoreError>;

    /// Replace the default config, journaling a config-change entry.
    fn put_config(
        &self,
        config: ScoringConfig,
        actor: &str,
        note: &str,
    ) -> Result<AuditEntry, StoreError>;

    fn config_audit_log(&self) -> Result<Vec<AuditEntry>, StoreError>;

    /// Session plus journal, ready to move between stores.
    fn export_session(&self, id: &str) -> Result<SessionArchive, StoreError> {
        Ok(SessionArchive {
            schema: ARCHIVE_SCHEMA.to_string(),
            session: self.get_session(id)?,
            audit: self.audit_log(id)?,
        })
    }

    /// Insert an archived session verbatim, keeping its revision and journal.
    fn import_session(&self, archive: SessionArchive) -> Result<Session, StoreError>;
}

/// Checks shared by every backend before a save is committed.
fn check_save(stored: &Session, incoming: &Session, expected: u64) -> Result<(), StoreError> {
    if stored.revision != expected {
        return Err(StoreError::Conflict {
            id: stored.id.clone(),
            expected,
            actual: stored.revision,
        });
    }
    if stored.status == SessionStatus::Finalized {
        return Err(StoreError::Finalized(stored.id.clone()));
    }
    if stored.config != incoming.config {
        return Err(StoreError::ConfigFrozen(stored.id.clone()));
    }
    let issues = incoming.validate();
    if !issues.is_empty() {
        return Err(StoreError::Invalid(issues));
    }
    Ok(())
}

fn prepare_new(mut session: Session, now: DateTime<Utc>) -> Result<Session, StoreError> {
    if session.id.is_empty() {
        session.id = uuid::Uuid::new_v4().simple().to_string();
    }
    session.revision = 1;
    session.created_at = now;
    session.updated_at = now;
    let issues = session.validate();
    if !issues.is_empty() {
        return Err(StoreError::Invalid(issues));
    }
    Ok(session)
}

/// Assign ids, sequence numbers and timestamps. Timestamps never run
/// backwards within a journal even if the wall clock does.
fn stamp(
    records: Vec<AuditRecord>,
    last: Option<&AuditEntry>,
    now: DateTime<Utc>,
) -> Vec<AuditEntry> {
    let mut seq = last.map_or(0, |e| e.seq);
    let ts = last.map_or(now, |e| now.max(e.timestamp));
    records
        .into_iter()
        .map(|r| {
            seq += 1;
            AuditEntry::from_record(r, uuid::Uuid::new_v4().to_string(), seq, ts)
        })
        .collect()
}

fn config_record(
    before: &ScoringConfig,
    after: &ScoringConfig,
    actor: &str,
    note: &str,
) -> AuditRecord {
    AuditRecord {
        actor: actor.to_string(),
        action: AuditAction::ConfigChange,
        target: "config".to_string(),
        before: serde_json::to_value(before).expect("config serializes"),
        after: serde_json::to_value(after).expect("config serializes"),
        note: note.to_string(),
    }
}

fn check_config(config: &ScoringConfig) -> Result<(), StoreError> {
    let issues: Vec<_> = config
        .validate()
        .into_iter()
        .map(|v| v.nested("config"))
        .collect();
    if issues.is_empty() {
        Ok(())
    } else {
        Err(StoreError::Invalid(issues))
    }
}

fn check_archive(archive: &SessionArchive) -> Result<(), StoreError> {
    let issues = archive.check();
    if issues.is_empty() {
        Ok(())
    } else {
        Err(StoreError::Invalid(issues))
    }
}

#[cfg(test)]
pub(crate) mod contract {
    //! Behaviour every backend must share, run against each implementation.

    use super::*;
    use crate::bank::seed_use_cases;
    use crate::model::{AuditAction, MaterialityLevel};
    use serde_json::json;

    pub fn new_session() -> Session {
        Session::new(
            "Acme Energy",
            "sample-1",
            ScoringConfig::default(),
            seed_use_cases(),
        )
    }

    fn record(n: usize) -> AuditRecord {
        AuditRecord {
            actor: "analyst".into(),
            action: AuditAction::ScoreEdit,
            target: format!("edit.{n}"),
            before: json!(n),
            after: json!(n + 1),
            note: String::new(),
        }
    }

    pub fn create_then_get(store: &dyn SessionStore) {
        let created = store.create_session(new_session(), vec![]).unwrap();
        assert_eq!(created.revision, 1);
        assert!(is_valid_id(&created.id));
        assert_eq!(store.get_session(&created.id).unwrap(), created);
        assert!(store.audit_log(&created.id).unwrap().is_empty());
        let listed = store.list_sessions().unwrap();
        assert!(listed.iter().any(|s| s.id == created.id && s.revision == 1));
    }

    pub fn two_writers(store: &dyn SessionStore) {
        let s = store.create_session(new_session(), vec![]).unwrap();
        let mut a = s.clone();
        a.company = "Writer A".into();
        let mut b = s.clone();
        b.company = "Writer B".into();
        let saved = store.save_session(a, 1, vec![record(0)]).unwrap();
        assert_eq!(saved.revision, 2);
        let err = store.save_session(b, 1, vec![record(1)]).unwrap_err();
        assert_eq!(
            err,
            StoreError::Conflict {
                id: s.id.clone(),
                expected: 1,
                actual: 2
            }
        );
        assert_eq!(err.code(), "store.conflict");
        assert_eq!(err.details()["current_revision"], 2);
        assert_eq!(store.get_session(&s.id).unwrap().company, "Writer A");
        // the rejected writer's audit records are not journaled
        assert_eq!(store.audit_log(&s.id).unwrap().len(), 1);
    }

    pub fn finalized_rejects(store: &dyn SessionStore) {
        let mut s = store.create_session(new_session(), vec![]).unwrap();
        s.status = SessionStatus::Finalized;
        let s = store.save_session(s, 1, vec![]).unwrap();
        let err = store.save_session(s.clone(), 2, vec![]).unwrap_err();
        assert_eq!(err.code(), "store.finalized");
    }

    pub fn config_is_frozen(store: &dyn SessionStore) {
        let mut s = store.create_session(new_session(), vec![]).unwrap();
        s.config.t_high = 3.0;
        assert_eq!(
            store.save_session(s, 1, vec![]).unwrap_err().code(),
            "store.config_frozen"
        );
    }

    pub fn unknown_ids(store: &dyn SessionStore) {
        assert_eq!(
            store.get_session("missing").unwrap_err().code(),
            "store.not_found"
        );
        assert_eq!(
            store.audit_log("missing").unwrap_err().code(),
            "store.not_found"
        );
        let mut s = new_session();
        s.id = "missing".into();
        assert_eq!(
            store.save_session(s, 1, vec![]).unwrap_err().code(),
            "store.not_found"
        );
    }

    pub fn duplicate_and_invalid(store: &dyn SessionStore) {
        let mut s = new_session();
        s.id = "fixed-id".into();
        store.create_session(s.clone(), vec![]).unwrap();
        assert_eq!(
            store.create_session(s.clone(), vec![]).unwrap_err().code(),
            "store.exists"
        );
        s.id = "../escape".into();
        assert_eq!(
            store.create_session(s.clone(), vec![]).unwrap_err().code(),
            "session.invalid"
        );
        s.id = String::new();
        s.use_cases[0].materiality_adjusted = Some(MaterialityLevel::High);
        let err = store.create_session(s, vec![]).unwrap_err();
        let StoreError::Invalid(v) = err else {
            panic!("expected invalid")
        };
        assert_eq!(v[0].code, "override.note.required");
    }

    pub fn audit_is_ordered(store: &dyn SessionStore) {
        let mut s = store
            .create_session(new_session(), vec![record(0)])
            .unwrap();
        for n in 1..3 {
            s = store
                .save_session(s.clone(), s.revision, vec![record(n)])
                .unwrap();
        }
        let log = store.audit_log(&s.id).unwrap();
        assert_eq!(log.len(), 3);
        assert_eq!(log.iter().map(|e| e.seq).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(log.windows(2).all(|w| w[0].timestamp <= w[1].timestamp));
        assert_eq!(log[2].target, "edit.2");
    }

    pub fn global_config(store: &dyn SessionStore) {
        assert_eq!(store.config().unwrap(), ScoringConfig::default());
        let mut cfg = ScoringConfig::default();
        cfg.t_high = 3.0;
        let entry = store.put_config(cfg.clone(), "lead", "stricter").unwrap();
        assert_eq!(entry.action, AuditAction::ConfigChange);
        assert_eq!(entry.before["t_high"], 2.0);
        assert_eq!(entry.after["t_high"], 3.0);
        assert_eq!(store.config().unwrap(), cfg);
        assert_eq!(store.config_audit_log().unwrap(), vec![entry]);
        cfg.t_low = 5.0;
        assert_eq!(
            store.put_config(cfg, "lead", "").unwrap_err().code(),
            "session.invalid"
        );
    }

    pub fn export_import(from: &dyn SessionStore, to: &dyn SessionStore) {
        let s = from.create_session(new_session(), vec![record(0)]).unwrap();
        let s = from.save_session(s, 1, vec![record(1)]).unwrap();
        let archive = from.export_session(&s.id).unwrap();
        let imported = to.import_session(archive.clone()).unwrap();
        assert_eq!(imported, s);
        assert_eq!(to.export_session(&s.id).unwrap(), archive);
        assert_eq!(
            to.import_session(archive.clone()).unwrap_err().code(),
            "store.exists"
        );
        let mut broken = archive;
        broken.session.id = "other".into();
        broken.audit[1].seq = 7;
        assert_eq!(
            to.import_session(broken).unwrap_err().code(),
            "session.invalid"
        );
    }

    pub fn all(make: &dyn Fn() -> Box<dyn SessionStore>) {
        create_then_get(&*make());
        two_writers(&*make());
        finalized_rejects(&*make());
        config_is_frozen(&*make());
        unknown_ids(&*make());
        duplicate_and_invalid(&*make());
        audit_is_ordered(&*make());
        global_config(&*make());
        export_import(&*make(), &*make());
    }
}
