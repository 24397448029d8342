use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "EISENCUSP_CACHE_DIR";

/// Content-addressed result store. Keys include the toolkit version, so an
/// upgrade never reads stale entries.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

fn io(e: std::io::Error) -> Error {
    Error::Cache(e.to_string())
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// Explicit directory, else `$EISENCUSP_CACHE_DIR`, else `~/.cache/eisencusp`.
    pub fn locate(explicit: Option<&Path>) -> Option<Cache> {
        if let Some(p) = explicit {
            return Some(Cache::new(p));
        }
        if let Some(p) = std::env::var_os(CACHE_ENV) {
            return Some(Cache::new(p));
        }
        let home = std::env::var_os("HOME")?;
        Some(Cache::new(PathBuf::from(home).join(".cache").join("eisencusp")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(descriptor: &str) -> String {
        let mut h = Sha256::new();
        h.update(format!("eisencusp/{}/{descriptor}", crate::VERSION).as_bytes());
        format!("{:x}", h.finalize())
    }

    fn path(&self, descriptor: &str) -> PathBuf {
        self.dir.join(format!("{}.json", Cache::key(descriptor)))
    }

    pub fn get(&self, descriptor: &str) -> Option<String> {
        fs::read_to_string(self.path(descriptor)).ok()
    }

    /// Atomic write: temporary file in the same directory, then rename.
    pub fn put(&self, descriptor: &str, content: &str) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(content.as_bytes()).map_err(io)?;
        tmp.persist(self.path(descriptor)).map_err(|e| io(e.error))?;
        Ok(())
    }

    pub fn clear(&self) -> Result<usize> {
        let mut n = 0;
        let Ok(entries) = fs::read_dir(&self.dir) else {
            return Ok(0);
        };
        for e in entries {
            let p = e.map_err(io)?.path();
            if p.extension().is_some_and(|x| x == "json") {
                fs::remove_file(&p).map_err(io)?;
                n += 1;
            }
        }
        Ok(n)
    }
}
