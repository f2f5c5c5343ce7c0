//! On-disk cache of Gram matrices and determinants.
//!
//! Entries are keyed by a SHA-256 of `(kind, family, n, code version)`, so a
//! new build never reuses stale artifacts. Each file stores its payload next
//! to the payload's own SHA-256; a mismatch is treated as a miss. Writes go
//! through a temporary file in the same directory and an atomic rename.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use skeingram::diagrams::BasisFamily;
use skeingram::gram::CODE_VERSION;

#[derive(Serialize, Deserialize)]
struct Envelope {
    checksum: String,
    payload: String,
}

fn sha256_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

/// Outcome of a cache read.
pub enum Lookup {
    Hit(String),
    Miss,
    /// The file exists but fails its checksum or does not parse.
    Corrupt(PathBuf),
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn key(kind: &str, family: BasisFamily) -> String {
        sha256_hex(&format!("{kind}|{}|{}|{CODE_VERSION}", family.tag.name(), family.n))
    }

    pub fn path(&self, kind: &str, family: BasisFamily) -> PathBuf {
        self.dir.join(format!("{kind}-{}.json", Cache::key(kind, family)))
    }

    pub fn get(&self, kind: &str, family: BasisFamily) -> Lookup {
        let path = self.path(kind, family);
        let Ok(raw) = fs::read_to_string(&path) else {
            return Lookup::Miss;
        };
        match serde_json::from_str::<Envelope>(&raw) {
            Ok(env) if sha256_hex(&env.payload) == env.checksum => Lookup::Hit(env.payload),
            _ => Lookup::Corrupt(path),
        }
    }

    pub fn put(&self, kind: &str, family: BasisFamily, payload: &str) -> Result<()> {
        fs::create_dir_all(&self.dir)
            .with_context(|| format!("creating cache directory {}", self.dir.display()))?;
        let env = Envelope {
            checksum: sha256_hex(payload),
            payload: payload.to_string(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&env)?.as_bytes())?;
        tmp.flush()?;
        let path = self.path(kind, family);
        tmp.persist(&path)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use skeingram::diagrams::FamilyTag;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let fam = BasisFamily::new(FamilyTag::B, 2);
        assert!(matches!(cache.get("gram", fam), Lookup::Miss));
        cache.put("gram", fam, "{\"a\":1}").unwrap();
        match cache.get("gram", fam) {
            Lookup::Hit(p) => assert_eq!(p, "{\"a\":1}"),
            _ => panic!("expected a hit"),
        }
        // other kinds and sizes do not collide
        assert!(matches!(cache.get("det", fam), Lookup::Miss));
        assert!(matches!(cache.get("gram", BasisFamily::new(FamilyTag::B, 3)), Lookup::Miss));

        let path = cache.path("gram", fam);
        let tampered = fs::read_to_string(&path).unwrap().replace("\\\"a\\\":1", "\\\"a\\\":2");
        fs::write(&path, tampered).unwrap();
        assert!(matches!(cache.get("gram", fam), Lookup::Corrupt(_)));
    }

    #[test]
    fn keys_depend_on_family_and_size() {
        let a = Cache::key("gram", BasisFamily::new(FamilyTag::B, 2));
        let b = Cache::key("gram", BasisFamily::new(FamilyTag::Mb0, 2));
        let c = Cache::key("gram", BasisFamily::new(FamilyTag::B, 3));
        assert_eq!(a.len(), 64);
        assert!(a != b && a != c && b != c);
    }
}
