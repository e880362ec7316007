use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use chrono::Utc;
use serde::de::DeserializeOwned;

use super::{
    check_archive, check_config, check_save, config_record, is_valid_id, prepare_new, stamp,
    Session, SessionArchive, SessionStore, SessionSummary, StoreError,
};
use crate::model::{AuditEntry, AuditRecord, ScoringConfig};

/// Directory-backed store.
///
/// ```text
/// <root>/config.json           default config for new sessions
/// <root>/config.audit.log      config-change journal
/// <root>/sessions/<id>.json    one canonical JSON document per session
/// <root>/audit/<id>.log        one JSON object per line, append-only
/// ```
///
/// Session documents are replaced atomically (write to a temp file, fsync,
/// rename). Journal lines are appended and fsynced before the session
/// document moves to its new revision, so a crash can leave an extra journal
/// line but never an unjournaled change. Writers are serialized per session
/// within one process.
pub struct FileStore {
    root: PathBuf,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

const CONFIG_LOCK: &str = "\0config";

fn io_err(path: &Path, err: impl std::fmt::Display) -> StoreError {
    StoreError::Io {
        path: path.display().to_string(),
        message: err.to_string(),
    }
}

fn corrupt(path: &Path, err: impl std::fmt::Display) -> StoreError {
    StoreError::Corrupt {
        path: path.display().to_string(),
        message: err.to_string(),
    }
}

impl FileStore {
    /// Open (creating if needed) a store rooted at `root`.
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let root = root.into();
        for dir in [root.join("sessions"), root.join("audit")] {
            fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        }
        Ok(Self {
            root,
            locks: Mutex::new(HashMap::new()),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn session_path(&self, id: &str) -> PathBuf {
        self.root.join("sessions").join(format!("{id}.json"))
    }

    pub fn audit_path(&self, id: &str) -> PathBuf {
        self.root.join("audit").join(format!("{id}.log"))
    }

    fn config_path(&self) -> PathBuf {
        self.root.join("config.json")
    }

    fn config_audit_path(&self) -> PathBuf {
        self.root.join("config.audit.log")
    }

    fn lock_for(&self, key: &str) -> Arc<Mutex<()>> {
        let mut locks = self.locks.lock().unwrap_or_else(|p| p.into_inner());
        locks.entry(key.to_string()).or_default().clone()
    }

    fn read_json<T: DeserializeOwned>(path: &Path) -> Result<Option<T>, StoreError> {
        match fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text)
                .map(Some)
                .map_err(|e| corrupt(path, e)),
            Err(e) if e.kind() == ErrorKind::NotFound => Ok(None),
            Err(e) => Err(io_err(path, e)),
        }
    }

    fn write_atomic(path: &Path, contents: &str, replace: bool) -> Result<(), StoreError> {
        let dir = path.parent().expect("store paths have a parent");
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(dir, e))?;
        tmp.write_all(contents.as_bytes())
            .map_err(|e| io_err(path, e))?;
        tmp.as_file().sync_all().map_err(|e| io_err(path, e))?;
        if replace {
            tmp.persist(path).map_err(|e| io_err(path, e.error))?;
        } else {
            tmp.persist_noclobber(path).map_err(|e| {
                if e.error.kind() == ErrorKind::AlreadyExists {
                    let id = path
                        .file_stem()
                        .unwrap_or_default()
                        .to_string_lossy()
                        .into_owned();
                    StoreError::AlreadyExists(id)
                } else {
                    io_err(path, e.error)
                }
            })?;
        }
        Ok(())
    }

    fn read_journal(path: &Path) -> Result<Vec<AuditEntry>, StoreError> {
        let file = match fs::File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(io_err(path, e)),
        };
        let mut out = Vec::new();
        for (n, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| io_err(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let entry = serde_json::from_str(&line)
                .map_err(|e| corrupt(path, format!("line {}: {e}", n + 1)))?;
            out.push(entry);
        }
        Ok(out)
    }

    fn append_journal(path: &Path, entries: &[AuditEntry]) -> Result<(), StoreError> {
        if entries.is_empty() {
            return Ok(());
        }
        let mut buf = String::new();
        for e in entries {
            buf.push_str(&serde_json::to_string(e).expect("audit entries serialize"));
            buf.push('\n');
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| io_err(path, e))?;
        file.write_all(buf.as_bytes())
            .map_err(|e| io_err(path, e))?;
        file.sync_data().map_err(|e| io_err(path, e))
    }

    fn load(&self, id: &str) -> Result<Session, StoreError> {
        if !is_valid_id(id) {
            return Err(StoreError::NotFound(id.to_string()));
        }
        Self::read_json(&self.session_path(id))?.ok_or_else(|| StoreError::NotFound(id.to_string()))
    }
}

impl SessionStore for FileStore {
    fn create_session(
        &self,
        session: Session,
        audit: Vec<AuditRecord>,
    ) -> Result<Session, StoreError> {
        let now = Utc::now();
        let session = prepare_new(session, now)?;
        let lock = self.lock_for(&session.id);
        let _guard = lock.lock().unwrap_or_else(|p| p.into_inner());
        let path = self.session_path(&session.id);
        if path.exists() {
            return Err(StoreError::AlreadyExists(session.id));
        }
        // a leftover journal from a crashed create belongs to nobody
        let audit_path = self.audit_path(&session.id);
        if audit_path.exists() {
            fs::remove_file(&audit_path).map_err(|e| io_err(&audit_path, e))?;
        }
        Self::append_journal(&audit_path, &stamp(audit, None, now))?;
        Self::write_atomic(&path, &session.to_json(), false)?;
        Ok(session)
    }

    fn get_session(&self, id: &str) -> Result<Session, StoreError> {
        self.load(id)
    }

    fn list_sessions(&self) -> Result<Vec<SessionSummary>, StoreError> {
        let dir = self.root.join("sessions");
        let mut ids: Vec<String> = fs::read_dir(&dir)
            .map_err(|e| io_err(&dir, e))?
            .filter_map(|entry| {
                let name = entry.ok()?.file_name().into_string().ok()?;
                let id = name.strip_suffix(".json")?;
                is_valid_id(id).then(|| id.to_string())
            })
            .collect();
        ids.sort();
        ids.iter()
            .map(|id| self.load(id).map(|s| s.summary()))
            .collect()
    }

    fn save_session(
        &self,
        mut session: Session,
        expected_revision: u64,
        audit: Vec<AuditRecord>,
    ) -> Result<Session, StoreError> {
        let now = Utc::now();
        let lock = self.lock_for(&session.id);
        let _guard = lock.lock().unwrap_or_else(|p| p.into_inner());
        let stored = self.load(&session.id)?;
        check_save(&stored, &session, expected_revision)?;
        session.revision = expected_revision + 1;
        session.created_at = stored.created_at;
        session.updated_at = now.max(stored.updated_at);
        let audit_path = self.audit_path(&session.id);
        let journal = Self::read_journal(&audit_path)?;
        Self::append_journal(&audit_path, &stamp(audit, journal.last(), now))?;
        Self::write_atomic(&self.session_path(&session.id), &session.to_json(), true)?;
        Ok(session)
    }

    fn audit_log(&self, id: &str) -> Result<Vec<AuditEntry>, StoreError> {
        self.load(id)?;
        Self::read_journal(&self.audit_path(id))
    }

    fn config(&self) -> Result<ScoringConfig, StoreError> {
        Ok(Self::read_json(&self.config_path())?.unwrap_or_default())
    }

    fn put_config(
        &self,
        config: ScoringConfig,
        actor: &str,
        note: &str,
    ) -> Result<AuditEntry, StoreError> {
        check_config(&config)?;
        let lock = self.lock_for(CONFIG_LOCK);
        let _guard = lock.lock().unwrap_or_else(|p| p.into_inner());
        let before = self.config()?;
        let journal_path = self.config_audit_path();
        let journal = Self::read_journal(&journal_path)?;
        let entry = stamp(
            vec![config_record(&before, &config, actor, note)],
            journal.last(),
            Utc::now(),
        )
        .remove(0);
        Self::append_journal(&journal_path, std::slice::from_ref(&entry))?;
        let mut text = serde_json::to_string_pretty(&config).expect("config serializes");
        text.push('\n');
        Self::write_atomic(&self.config_path(), &text, true)?;
        Ok(entry)
    }

    fn config_audit_log(&self) -> Result<Vec<AuditEntry>, StoreError> {
        Self::read_journal(&self.config_audit_path())
    }

    fn import_session(&self, archive: SessionArchive) -> Result<Session, StoreError> {
        check_archive(&archive)?;
        let id = archive.session.id.clone();
        let lock = self.lock_for(&id);
        let _guard = lock.lock().unwrap_or_else(|p| p.into_inner());
        let path = self.session_path(&id);
        if path.exists() {
            return Err(StoreError::AlreadyExists(id));
        }
        let audit_path = self.audit_path(&id);
        if audit_path.exists() {
            fs::remove_file(&audit_path).map_err(|e| io_err(&audit_path, e))?;
        }
        Self::append_journal(&audit_path, &archive.audit)?;
        Self::write_atomic(&path, &archive.session.to_json(), false)?;
        Ok(archive.session)
    }
}
