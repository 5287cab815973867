//! On-disk basis cache: one file per key, named by the SHA-256 of the key.
//!
//! Writes go to a temporary file in the same directory followed by a
//! rename, so readers never observe a partial entry. Entries that fail to
//! decode are recomputed by the engine and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use formalis::groebner::BasisCache;
use sha2::{Digest, Sha256};

pub struct DirCache {
    dir: PathBuf,
    counter: AtomicU64,
}

impl DirCache {
    pub fn open(dir: &Path) -> std::io::Result<DirCache> {
        fs::create_dir_all(dir)?;
        Ok(DirCache {
            dir: dir.to_path_buf(),
            counter: AtomicU64::new(0),
        })
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{digest:x}.gb"))
    }
}

impl BasisCache for DirCache {
    fn load(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.path_for(key)).ok()
    }

    fn store(&self, key: &str, entry: &str) {
        let target = self.path_for(key);
        let n = self.counter.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".tmp-{}-{n}", std::process::id()));
        let written = fs::File::create(&tmp).and_then(|mut f| {
            f.write_all(entry.as_bytes())?;
            f.sync_all()
        });
        let res = written.and_then(|_| fs::rename(&tmp, &target));
        if let Err(e) = res {
            log::warn!("cache write to {} failed: {e}", target.display());
            let _ = fs::remove_file(&tmp);
        }
    }
}
