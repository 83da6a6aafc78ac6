//! Content-addressed disk cache for enumerated growth series.
//!
//! Each entry lives in `<sha256 of the descriptor>.json` and repeats the
//! descriptor inside, so a renamed or truncated file is detected on read.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use stperiod_core::coxeter::{CartanType, GrowthSeries, SeriesSource};

pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheLookup {
    Hit(GrowthSeries),
    Miss,
    /// Present but unusable; treated as a miss.
    Corrupt(String),
}

impl CacheLookup {
    pub fn series(self) -> Option<GrowthSeries> {
        match self {
            CacheLookup::Hit(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    schema_version: u32,
    descriptor: String,
    series: GrowthSeries,
}

/// Canonical key text, e.g. `growth/enumerated/A2/K=6`.
pub fn descriptor(ty: CartanType, truncation: usize) -> String {
    format!("growth/enumerated/{}{}/K={truncation}", ty.family(), ty.rank())
}

pub fn entry_path(dir: &Path, ty: CartanType, truncation: usize) -> PathBuf {
    let digest = Sha256::digest(descriptor(ty, truncation).as_bytes());
    dir.join(format!("{}.json", hex::encode(digest)))
}

pub fn cache_get(dir: &Path, ty: CartanType, truncation: usize) -> CacheLookup {
    let path = entry_path(dir, ty, truncation);
    let bytes = match fs::read(&path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return CacheLookup::Miss,
        Err(e) => return corrupt(&path, format!("unreadable: {e}")),
    };
    let entry: Entry = match serde_json::from_slice(&bytes) {
        Ok(e) => e,
        Err(e) => return corrupt(&path, format!("invalid JSON: {e}")),
    };
    let want = descriptor(ty, truncation);
    let s = &entry.series;
    if entry.schema_version != CACHE_SCHEMA_VERSION {
        return corrupt(&path, format!("schema version {}", entry.schema_version));
    }
    if entry.descriptor != want
        || s.family != ty.family()
        || s.rank != ty.rank()
        || s.truncation != truncation
        || s.coefficients.len() != truncation + 1
        || s.source != SeriesSource::Enumerated
        || s.coefficients.first() != Some(&1)
    {
        return corrupt(&path, format!("contents do not match {want}"));
    }
    CacheLookup::Hit(entry.series)
}

fn corrupt(path: &Path, reason: String) -> CacheLookup {
    log::warn!("ignoring cache file {}: {reason}", path.display());
    CacheLookup::Corrupt(reason)
}

/// Writes through a temporary file in the same directory and renames it into place.
pub fn cache_put(dir: &Path, series: &GrowthSeries) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let ty = series.cartan_type();
    let entry = Entry {
        schema_version: CACHE_SCHEMA_VERSION,
        descriptor: descriptor(ty, series.truncation),
        series: series.clone(),
    };
    let path = entry_path(dir, ty, series.truncation);
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer_pretty(&mut tmp, &entry)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(&path).map_err(|e| e.error)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use stperiod_core::coxeter::{build_affine_system, growth_coefficients, Family, DEFAULT_ELEMENT_BUDGET};

    fn a2() -> CartanType {
        CartanType::new(Family::A, 2).unwrap()
    }

    #[test]
    fn empty_cache_misses() {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(cache_get(dir.path(), a2(), 6), CacheLookup::Miss);
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let s = growth_coefficients(&build_affine_system(Family::A, 2).unwrap(), 6, DEFAULT_ELEMENT_BUDGET).unwrap();
        cache_put(dir.path(), &s).unwrap();
        assert_eq!(cache_get(dir.path(), a2(), 6), CacheLookup::Hit(s));
        assert_eq!(cache_get(dir.path(), a2(), 5), CacheLookup::Miss);
    }

    #[test]
    fn corrupt_file_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(entry_path(dir.path(), a2(), 6), b"{\"schema_version\": 1, \"desc").unwrap();
        assert!(matches!(cache_get(dir.path(), a2(), 6), CacheLookup::Corrupt(_)));
    }

    #[test]
    fn file_under_wrong_key_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let s = growth_coefficients(&build_affine_system(Family::A, 2).unwrap(), 6, DEFAULT_ELEMENT_BUDGET).unwrap();
        let written = cache_put(dir.path(), &s).unwrap();
        fs::rename(written, entry_path(dir.path(), a2(), 7)).unwrap();
        assert!(matches!(cache_get(dir.path(), a2(), 7), CacheLookup::Corrupt(_)));
    }
}
