use std::collections::BTreeMap;
use std::sync::Mutex;

use chrono::Utc;

use super::{
    check_archive, check_config, check_save, config_record, prepare_new, stamp, Session,
    SessionArchive, SessionStore, SessionSummary, StoreError,
};
use crate::model::{AuditEntry, AuditRecord, ScoringConfig};

#[derive(Default)]
struct State {
    sessions: BTreeMap<String, Session>,
    journals: BTreeMap<String, Vec<AuditEntry>>,
    config: ScoringConfig,
    config_journal: Vec<AuditEntry>,
}

/// Process-local store. Nothing survives the process.
#[derive(Default)]
pub struct MemoryStore {
    state: Mutex<State>,
}

impl MemoryStore {
    pub fn new() -> Self {
        Self::default()
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, State> {
        self.state.lock().unwrap_or_else(|p| p.into_inner())
    }
}

impl SessionStore for MemoryStore {
    fn create_session(
        &self,
        session: Session,
        audit: Vec<AuditRecord>,
    ) -> Result<Session, StoreError> {
        let now = Utc::now();
        let session = prepare_new(session, now)?;
        let mut state = self.lock();
        if state.sessions.contains_key(&session.id) {
            return Err(StoreError::AlreadyExists(session.id));
        }
        state
            .journals
            .insert(session.id.clone(), stamp(audit, None, now));
        state.sessions.insert(session.id.clone(), session.clone());
        Ok(session)
    }

    fn get_session(&self, id: &str) -> Result<Session, StoreError> {
        self.lock()
            .sessions
            .get(id)
            .cloned()
            .ok_or_else(|| StoreError::NotFound(id.to_string()))
    }

    fn list_sessions(&self) -> Result<Vec<SessionSummary>, StoreError> {
        Ok(self
            .lock()
            .sessions
            .values()
            .map(Session::summary)
            .collect())
    }

    fn save_session(
        &self,
        mut session: Session,
        expected_revision: u64,
        audit: Vec<AuditRecord>,
    ) -> Result<Session, StoreError> {
        let now = Utc::now();
        let mut state = self.lock();
        let stored = state
            .sessions
            .get(&session.id)
            .ok_or_else(|| StoreError::NotFound(session.id.clone()))?;
        check_save(stored, &session, expected_revision)?;
        session.revision = expected_revision + 1;
        session.created_at = stored.created_at;
        session.updated_at = now.max(stored.updated_at);
        let journal = state.journals.entry(session.id.clone()).or_default();
        let entries = stamp(audit, journal.last(), now);
        journal.extend(entries);
        state.sessions.insert(session.id.clone(), session.clone());
        Ok(session)
    }

    fn audit_log(&self, id: &str) -> Result<Vec<AuditEntry>, StoreError> {
        let state = self.lock();
        if !state.sessions.contains_key(id) {
            return Err(StoreError::NotFound(id.to_string()));
        }
        Ok(state.journals.get(id).cloned().unwrap_or_default())
    }

    fn config(&self) -> Result<ScoringConfig, StoreError> {
        Ok(self.lock().config.clone())
    }

    fn put_config(
        &self,
        config: ScoringConfig,
        actor: &str,
        note: &str,
    ) -> Result<AuditEntry, StoreError> {
        check_config(&config)?;
        let mut state = self.lock();
        let record = config_record(&state.config, &config, actor, note);
        let entry = stamp(vec![record], state.config_journal.last(), Utc::now()).remove(0);
        state.config_journal.push(entry.clone());
        state.config = config;
        Ok(entry)
    }

    fn config_audit_log(&self) -> Result<Vec<AuditEntry>, StoreError> {
        Ok(self.lock().config_journal.clone())
    }

    fn import_session(&self, archive: SessionArchive) -> Result<Session, StoreError> {
        check_archive(&archive)?;
        let mut state = self.lock();
        let id = archive.session.id.clone();
        if state.sessions.contains_key(&id) {
            return Err(StoreError::AlreadyExists(id));
        }
        state.journals.insert(id.clone(), archive.audit);
        state.sessions.insert(id, archive.session.clone());
        Ok(archive.session)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memory_store_contract() {
        super::super::contract::all(&|| Box::new(MemoryStore::new()));
    }
}
