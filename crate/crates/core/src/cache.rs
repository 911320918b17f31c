//! On-disk artifact cache keyed by a SHA-256 hash of construction parameters.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::complex::DeltaComplex;
use crate::error::Result;
use crate::json::ComplexDocument;

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "TRISP_CACHE_DIR";

const KEY_VERSION: &str = "trisp-artifact-v1";

/// Hex digest of the versioned, NUL-separated parameter list.
pub fn cache_key(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    h.update(KEY_VERSION.as_bytes());
    for p in parts {
        h.update([0u8]);
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ComplexCache {
    dir: PathBuf,
}

impl ComplexCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ComplexCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Loads a cached complex. Unreadable or malformed entries count as
    /// misses.
    pub fn load(&self, key: &str) -> Option<DeltaComplex> {
        let bytes = fs::read(self.path_for(key)).ok()?;
        let doc: ComplexDocument = serde_json::from_slice(&bytes).ok()?;
        doc.to_complex().ok()
    }

    pub fn store(&self, key: &str, c: &DeltaComplex) -> Result<()> {
        let bytes = serde_json::to_vec(&ComplexDocument::from_complex(c))?;
        write_atomic(&self.path_for(key), &bytes)
    }

    /// Returns the cached complex when it exists and `accept` approves it;
    /// otherwise builds, stores, and returns a fresh one.
    pub fn get_or_build(
        &self,
        key: &str,
        accept: impl Fn(&DeltaComplex) -> bool,
        build: impl FnOnce() -> Result<DeltaComplex>,
    ) -> Result<(DeltaComplex, bool)> {
        if let Some(c) = self.load(key) {
            if accept(&c) {
                return Ok((c, true));
            }
        }
        let c = build()?;
        self.store(key, &c)?;
        Ok((c, false))
    }
}
