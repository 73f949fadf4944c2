//! Memo table for `n_λ`, optionally persisted as JSON.
//!
//! File layout: `{"entries": {"2,1": [5, 5, 1], ...}}`, keyed by the
//! canonical partition string with ascending coefficients.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::poset::Partition;

#[derive(Debug, Default)]
pub struct ResultStore {
    path: Option<PathBuf>,
    entries: RwLock<HashMap<Partition, QPoly>>,
}

impl ResultStore {
    pub fn in_memory() -> Self {
        ResultStore::default()
    }

    /// Opens a store backed by `path`. A missing file gives an empty store.
    /// An unreadable or corrupt file also gives an empty store, and the
    /// returned warning says why.
    pub fn open(path: impl AsRef<Path>) -> (Self, Option<String>) {
        let path = path.as_ref().to_path_buf();
        let mut store = ResultStore {
            path: Some(path.clone()),
            ..Default::default()
        };
        if !path.exists() {
            return (store, None);
        }
        let loaded = std::fs::read_to_string(&path)
            .map_err(|e| Error::Io(e.to_string()))
            .and_then(|s| Self::parse_entries(&s));
        match loaded {
            Ok(entries) => {
                store.entries = RwLock::new(entries);
                (store, None)
            }
            Err(e) => (
                store,
                Some(format!("ignoring cache {}: {e}", path.display())),
            ),
        }
    }

    fn parse_entries(text: &str) -> Result<HashMap<Partition, QPoly>> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let obj = v
            .get("entries")
            .and_then(|e| e.as_object())
            .ok_or_else(|| Error::Parse("missing \"entries\" object".into()))?;
        let mut out = HashMap::new();
        for (key, coeffs) in obj {
            let lambda: Partition = key.parse()?;
            if lambda.key() != *key {
                return Err(Error::Parse(format!("non-canonical key {key:?}")));
            }
            let arr = coeffs
                .as_array()
                .ok_or_else(|| Error::Parse(format!("entry {key:?} is not a list")))?;
            let n = QPoly::from_json_coeffs(arr)?;
            // Entries must at least look like n_λ: monic of degree λ_1.
            if !n.is_monic() || n.degree() != Some(lambda.largest() as usize) {
                return Err(Error::Parse(format!("entry {key:?} is not monic of degree λ_1")));
            }
            out.insert(lambda, n);
        }
        Ok(out)
    }

    pub fn get(&self, lambda: &Partition) -> Option<QPoly> {
        self.entries.read().unwrap().get(lambda).cloned()
    }

    pub fn insert(&self, lambda: &Partition, n: QPoly) {
        self.entries.write().unwrap().insert(lambda.clone(), n);
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries = self.entries.read().unwrap();
        let sorted: BTreeMap<String, serde_json::Value> = entries
            .iter()
            .map(|(k, v)| (k.key(), serde_json::Value::from(v.to_json_coeffs())))
            .collect();
        serde_json::json!({ "entries": sorted })
    }

    /// Writes the store to its file; a no-op for in-memory stores.
    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let text = serde_json::to_string_pretty(&self.to_json()).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_and_reload() {
        let dir = std::env::temp_dir().join(format!("pairorbits-store-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.json");
        let _ = std::fs::remove_file(&path);
        let (store, warn) = ResultStore::open(&path);
        assert!(warn.is_none() && store.is_empty());
        store.insert(&"2,1".parse().unwrap(), QPoly::from_ints(&[5, 5, 1]));
        store.insert(&"".parse().unwrap(), QPoly::one());
        store.save().unwrap();
        let (again, warn) = ResultStore::open(&path);
        assert!(warn.is_none());
        assert_eq!(again.to_json(), store.to_json());
        assert_eq!(again.get(&"2,1".parse().unwrap()), Some(QPoly::from_ints(&[5, 5, 1])));

        std::fs::write(&path, "{not json").unwrap();
        let (bad, warn) = ResultStore::open(&path);
        assert!(warn.is_some() && bad.is_empty());

        std::fs::write(&path, r#"{"entries": {"2,1": [5, 5, 2]}}"#).unwrap();
        let (bad, warn) = ResultStore::open(&path);
        assert!(warn.is_some() && bad.is_empty());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
