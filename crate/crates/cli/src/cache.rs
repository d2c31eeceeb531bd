//! On-disk report cache: one JSON file per key, written atomically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::report::{AnalysisReport, SCHEMA_VERSION, TOOL_VERSION};

/// What is stored in a cache file.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CacheEntry {
    pub key: String,
    pub tool_version: String,
    pub report: AnalysisReport,
}

/// Key from the canonical curve, the field, the options and the tool
/// version, so a new version never reads old entries.
pub fn cache_key(canonical: &str, field: &str, options: &str) -> String {
    let mut h = Sha256::new();
    for part in [TOOL_VERSION, field, canonical, options] {
        h.update(part.as_bytes());
        h.update([0u8]);
    }
    hex::encode(h.finalize())
}

/// Decodes a cache file and checks it belongs to `key`.
pub fn decode_entry(bytes: &[u8], key: &str) -> Result<AnalysisReport, String> {
    let entry: CacheEntry = serde_json::from_slice(bytes).map_err(|e| e.to_string())?;
    if entry.key != key {
        return Err(format!("entry is for key {}", entry.key));
    }
    if entry.tool_version != TOOL_VERSION || entry.report.tool_version != TOOL_VERSION {
        return Err(format!("entry written by version {}", entry.tool_version));
    }
    if entry.report.schema_version != SCHEMA_VERSION {
        return Err(format!("schema version {}", entry.report.schema_version));
    }
    Ok(entry.report)
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// The stored report, or `None`. A file that does not decode is removed
    /// with a warning.
    pub fn load(&self, key: &str) -> Option<AnalysisReport> {
        let path = self.path(key);
        let bytes = fs::read(&path).ok()?;
        match decode_entry(&bytes, key) {
            Ok(r) => Some(r),
            Err(e) => {
                log::warn!("discarding corrupt cache entry {}: {e}", path.display());
                if let Err(e) = fs::remove_file(&path) {
                    log::warn!("could not remove {}: {e}", path.display());
                }
                None
            }
        }
    }

    /// Writes to a temporary file in the same directory, then renames.
    pub fn store(&self, key: &str, report: &AnalysisReport) -> std::io::Result<()> {
        let entry = CacheEntry {
            key: key.into(),
            tool_version: TOOL_VERSION.into(),
            report: report.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
