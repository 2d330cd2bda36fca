//! On-disk cache of enumerated tallies, one JSON file per shape and method.

use std::fs;
use std::path::{Path, PathBuf};

use crate::enumeration::{Method, StratumTally};
use crate::error::Result;

pub const CACHE_ENV: &str = "HSTRATA_CACHE_DIR";

/// Bump when the tally format or the enumeration changes.
pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TallyCache {
    dir: PathBuf,
}

impl TallyCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Cache rooted at `$HSTRATA_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, m: usize, n: usize, method: Method) -> PathBuf {
        self.dir
            .join(format!("tally-v{CACHE_VERSION}-{m}x{n}-{method}.json"))
    }

    /// A missing or unreadable entry is a miss.
    pub fn load(&self, m: usize, n: usize, method: Method) -> Option<StratumTally> {
        let text = fs::read_to_string(self.path_for(m, n, method)).ok()?;
        let tally: StratumTally = serde_json::from_str(&text).ok()?;
        ((tally.m, tally.n) == (m, n)).then_some(tally)
    }

    pub fn store(&self, method: Method, tally: &StratumTally) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(tally.m, tally.n, method);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(tally)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn get_or_compute(
        &self,
        m: usize,
        n: usize,
        method: Method,
        compute: impl FnOnce() -> Result<StratumTally>,
    ) -> Result<StratumTally> {
        if let Some(hit) = self.load(m, n, method) {
            return Ok(hit);
        }
        let tally = compute()?;
        self.store(method, &tally)?;
        Ok(tally)
    }
}
