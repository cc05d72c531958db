//! Content-addressed cache for the vector field enumeration.
//!
//! A cache entry is keyed by the SHA-256 of the condition matrix `E` and
//! the prime filter. The filter only decides which hits are kept, so an
//! entry for the unfiltered run also answers any filtered request.

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use gmlab_core::vfsearch::{build_e, enumerate_hits, EnumerationReport};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

const FORMAT: &str = "gmlab-vf-cache/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub format: String,
    pub e_hash: String,
    pub filter: Option<(u64, u64)>,
    pub report: EnumerationReport,
}

/// How a report was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Computed,
    Hit(PathBuf),
    /// Filtered from the unfiltered entry at this path.
    Narrowed(PathBuf),
}

pub fn e_hash() -> String {
    let e = build_e();
    let bytes = serde_json::to_vec(&e.rows).expect("E serializes");
    hex::encode(Sha256::digest(bytes))
}

fn filter_pair(f: &Option<RangeInclusive<u64>>) -> Option<(u64, u64)> {
    f.as_ref().map(|r| (*r.start(), *r.end()))
}

pub fn entry_name(e_hash: &str, filter: Option<(u64, u64)>) -> String {
    let mut h = Sha256::new();
    h.update(e_hash.as_bytes());
    match filter {
        None => h.update(b"all"),
        Some((a, b)) => h.update(format!("{a}..={b}").as_bytes()),
    }
    format!("vf-{}.json", &hex::encode(h.finalize())[..16])
}

fn read(path: &Path, e_hash: &str, filter: Option<(u64, u64)>) -> Option<EnumerationReport> {
    let text = fs::read_to_string(path).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    (entry.format == FORMAT && entry.e_hash == e_hash && entry.filter == filter).then_some(entry.report)
}

fn write(path: &Path, e_hash: &str, filter: Option<(u64, u64)>, report: &EnumerationReport) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
    }
    let entry = CacheEntry {
        format: FORMAT.into(),
        e_hash: e_hash.into(),
        filter,
        report: report.clone(),
    };
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_vec(&entry).expect("entry serializes")).map_err(|e| CliError::Io(tmp.clone(), e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// Keep only the hits at primes in `filter`.
pub fn narrow(mut report: EnumerationReport, filter: &RangeInclusive<u64>) -> EnumerationReport {
    report.hits.retain(|h| filter.contains(&h.p));
    report
}

/// The enumeration for `filter`, from `file` (exact key only), from the
/// cache directory, or computed and stored. `None` for both locations
/// disables caching.
pub fn enumeration(
    filter: Option<RangeInclusive<u64>>,
    file: Option<&Path>,
    dir: Option<&Path>,
) -> Result<(EnumerationReport, Source), CliError> {
    let hash = e_hash();
    let key = filter_pair(&filter);
    if let Some(path) = file {
        if let Some(r) = read(path, &hash, key) {
            return Ok((r, Source::Hit(path.to_path_buf())));
        }
        let r = enumerate_hits(filter);
        write(path, &hash, key, &r)?;
        return Ok((r, Source::Computed));
    }
    let Some(dir) = dir else {
        return Ok((enumerate_hits(filter), Source::Computed));
    };
    let exact = dir.join(entry_name(&hash, key));
    if let Some(r) = read(&exact, &hash, key) {
        return Ok((r, Source::Hit(exact)));
    }
    if let Some(f) = &filter {
        let full = dir.join(entry_name(&hash, None));
        if let Some(r) = read(&full, &hash, None) {
            return Ok((narrow(r, f), Source::Narrowed(full)));
        }
    }
    let r = enumerate_hits(filter);
    write(&exact, &hash, key, &r)?;
    Ok((r, Source::Computed))
}
