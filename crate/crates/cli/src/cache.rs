//! On-disk cache of exact Stanley depth results.
//!
//! Entries are keyed by the canonical serialization of the ideal and named by
//! its SHA-256 digest. Writes go to a temporary file that is then renamed.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::report::SdepthDoc;

pub const ENV_VAR: &str = "STANLEY_LAB_CACHE";

const KEY_VERSION: &str = "sdepth/v1";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// The environment variable wins over the command-line directory.
    pub fn resolve(cli_dir: Option<&Path>) -> Option<Cache> {
        match std::env::var_os(ENV_VAR) {
            Some(dir) if !dir.is_empty() => Some(Cache::new(dir)),
            _ => cli_dir.map(Cache::new),
        }
    }

    pub fn path_for(&self, canonical: &str) -> PathBuf {
        let digest = Sha256::digest(format!("{KEY_VERSION}\n{canonical}").as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    /// A missing or unreadable entry is a miss.
    pub fn get(&self, canonical: &str) -> Option<SdepthDoc> {
        let bytes = fs::read(self.path_for(canonical)).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    pub fn put(&self, canonical: &str, doc: &SdepthDoc) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(canonical);
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&serde_json::to_vec(doc).map_err(io::Error::other)?)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)
    }
}
