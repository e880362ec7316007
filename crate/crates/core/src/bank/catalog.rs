use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use super::{builtin_bank, builtin_bank_versions, load_bank_file, BankError, BankManifest};
use crate::model::Violation;

/// Banks known to a process, keyed by version.
#[derive(Debug, Clone, Default)]
pub struct BankCatalog {
    banks: BTreeMap<String, Arc<BankManifest>>,
}

impl BankCatalog {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The bundled sample and synthetic complete banks.
    pub fn builtin() -> Self {
        let mut catalog = Self::empty();
        for v in builtin_bank_versions() {
            catalog.insert(builtin_bank(v).expect("listed builtin banks exist"));
        }
        catalog
    }

    /// Add or replace a bank under its version.
    pub fn insert(&mut self, bank: BankManifest) {
        self.banks.insert(bank.version.clone(), Arc::new(bank));
    }

    /// Load every `*.json` bank in a directory. Fails on the first invalid
    /// bank so a typo never silently hides a bank.
    pub fn load_dir(&mut self, dir: &Path) -> Result<usize, BankError> {
        let entries = std::fs::read_dir(dir).map_err(|e| BankError {
            issues: vec![Violation::new(
                "bank.io",
                dir.display().to_string(),
                e.to_string(),
            )],
        })?;
        let mut paths: Vec<_> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for path in &paths {
            self.insert(load_bank_file(path)?);
        }
        Ok(paths.len())
    }

    pub fn get(&self, version: &str) -> Option<Arc<BankManifest>> {
        self.banks.get(version).cloned()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BankManifest> {
        self.banks.values().map(|b| b.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_and_directory_banks() {
        let mut catalog = BankCatalog::builtin();
        assert_eq!(catalog.iter().count(), 2);
        let dir = tempfile::tempdir().unwrap();
        let mut bank = super::super::sample_bank();
        bank.version = "house-1".into();
        std::fs::write(dir.path().join("house.json"), bank.to_json()).unwrap();
        std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
        assert_eq!(catalog.load_dir(dir.path()).unwrap(), 1);
        assert_eq!(catalog.get("house-1").unwrap().questions.len(), 3);
        std::fs::write(dir.path().join("bad.json"), "{}").unwrap();
        assert_eq!(
            catalog.load_dir(dir.path()).unwrap_err().code(),
            "bank.schema"
        );
    }
}
