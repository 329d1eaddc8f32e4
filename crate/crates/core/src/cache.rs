//! On-disk cache of echelon rows, keyed by a hash of the presentation.
//! Standard words and multiplication tables are rebuilt on load, so a
//! cached engine is indistinguishable from a freshly computed one.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cyclotomic::CycNum;
use crate::engine::Engine;
use crate::io::presentation_to_json;
use crate::linalg::SparseVec;

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct StoredSlice {
    ncols: usize,
    rows: Vec<Vec<(usize, String)>>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    key: String,
    slices: Vec<StoredSlice>,
}

#[derive(Clone, Debug)]
pub struct SliceCache {
    dir: PathBuf,
}

impl SliceCache {
    pub fn new(dir: impl Into<PathBuf>) -> SliceCache {
        SliceCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// sha256 of the canonical presentation file and the format version.
    pub fn key(engine: &Engine) -> String {
        let mut h = Sha256::new();
        h.update(FORMAT_VERSION.to_le_bytes());
        h.update(presentation_to_json(engine.presentation()).as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Installs cached slices; returns the highest degree restored. Missing,
    /// stale or corrupt files count as a miss.
    pub fn load(&self, engine: &mut Engine) -> usize {
        let key = Self::key(engine);
        let Ok(text) = fs::read_to_string(self.path(&key)) else { return 0 };
        let Ok(file) = serde_json::from_str::<CacheFile>(&text) else { return 0 };
        if file.version != FORMAT_VERSION || file.key != key {
            return 0;
        }
        let ctx = engine.ctx().clone();
        let mut stored = Vec::new();
        for s in file.slices {
            let rows: Option<Vec<SparseVec>> = s
                .rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(c, a)| CycNum::parse(&ctx, &a).ok().map(|v| (c, v)))
                        .collect::<Option<Vec<_>>>()
                        .map(SparseVec::from_entries)
                })
                .collect();
            let Some(rows) = rows else { break };
            stored.push((s.ncols, rows));
        }
        engine.install_rows(stored)
    }

    /// Writes all computed slices unless the cache already holds as many.
    pub fn store(&self, engine: &Engine) -> std::io::Result<()> {
        let key = Self::key(engine);
        let path = self.path(&key);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(old) = serde_json::from_str::<CacheFile>(&text) {
                if old.version == FORMAT_VERSION && old.slices.len() >= engine.max_degree() {
                    return Ok(());
                }
            }
        }
        let slices = engine.slices()[1..]
            .iter()
            .map(|s| StoredSlice {
                ncols: engine.slice(s.degree() - 1).expect("present").dim() * engine.n(),
                rows: s
                    .reduction_rows()
                    .iter()
                    .map(|r| r.entries().iter().map(|(c, a)| (*c, a.to_string())).collect())
                    .collect(),
            })
            .collect();
        let file = CacheFile { version: FORMAT_VERSION, key, slices };
        fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&file).expect("serializable"))?;
        fs::rename(tmp, path)
    }
}
