//! Resumable per-library results as JSON lines.
//!
//! The first line is a header naming the format version and the cost
//! model; every further line is one [`LibraryRecord`] tagged with the
//! format version. Records are
//! appended in chunks, so an interrupted run loses at most one chunk and
//! may leave a truncated last line.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{run_census, CensusConfig, CensusResult, CensusScope, LibraryRecord, LIBRARY_COUNT, STATE_COUNT};
use crate::error::{Error, Result};
use crate::gate::CostModel;

pub const CACHE_FORMAT_VERSION: u32 = 1;
const CACHE_KIND: &str = "revsynth-library-cache";

/// Libraries computed between cache appends.
pub const CHUNK_SIZE: usize = 256;

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Header {
    kind: String,
    version: u32,
    cost_model: Vec<u32>,
}

impl Header {
    fn new(model: &CostModel) -> Self {
        Header {
            kind: CACHE_KIND.to_string(),
            version: CACHE_FORMAT_VERSION,
            cost_model: model.costs().to_vec(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Line {
    version: u32,
    #[serde(flatten)]
    record: LibraryRecord,
}

/// Records read back from a cache file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CacheLoad {
    pub records: BTreeMap<u32, LibraryRecord>,
    /// Lines that were skipped, with the reason (non-strict loads only).
    pub skipped: Vec<(usize, String)>,
}

fn validate(record: &LibraryRecord) -> std::result::Result<(), String> {
    if record.mask == 0 || record.mask > LIBRARY_COUNT {
        return Err(format!("mask {:#x} out of range", record.mask));
    }
    let full = STATE_COUNT as u64;
    if record.order == 0 || !full.is_multiple_of(record.order) {
        return Err(format!("group order {} does not divide {full}", record.order));
    }
    if record.universal != (record.order == full) {
        return Err("universal flag disagrees with group order".into());
    }
    if (record.order == 1) != (record.max_len.value == 0) {
        return Err("length eccentricity disagrees with group order".into());
    }
    Ok(())
}

/// Reads a cache written for `model`. A missing file yields no records.
///
/// A header that does not match is always an error. A corrupt record line
/// is an error under `strict` and is skipped otherwise; line numbers are
/// 1-based.
pub fn load_records(path: &Path, model: &CostModel, strict: bool) -> Result<CacheLoad> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(CacheLoad::default()),
        Err(e) => return Err(e.into()),
    };
    let mut load = CacheLoad::default();
    let mut lines = BufReader::new(file).lines();
    match lines.next() {
        None => return Ok(load),
        Some(first) => {
            let first = first?;
            let header: Header = serde_json::from_str(&first).map_err(|e| Error::Cache {
                line: 1,
                message: format!("bad header: {e}"),
            })?;
            let expected = Header::new(model);
            if header != expected {
                return Err(Error::Cache {
                    line: 1,
                    message: format!(
                        "cache was written as {} v{} with costs {:?}; expected {} v{} with costs {:?}",
                        header.kind,
                        header.version,
                        header.cost_model,
                        expected.kind,
                        expected.version,
                        expected.cost_model
                    ),
                });
            }
        }
    }
    for (i, line) in lines.enumerate() {
        let number = i + 2;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed = serde_json::from_str::<Line>(&line)
            .map_err(|e| e.to_string())
            .and_then(|l| {
                if l.version != CACHE_FORMAT_VERSION {
                    return Err(format!(
                        "format version {} (expected {CACHE_FORMAT_VERSION})",
                        l.version
                    ));
                }
                validate(&l.record).map(|_| l.record)
            });
        match parsed {
            Ok(r) => {
                load.records.insert(r.mask, r);
            }
            Err(message) if strict => return Err(Error::Cache { line: number, message }),
            Err(message) => load.skipped.push((number, message)),
        }
    }
    Ok(load)
}

/// Appends records, writing the header first if the file is new or empty.
pub fn save_records(path: &Path, model: &CostModel, records: &[LibraryRecord]) -> Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let empty = file.metadata()?.len() == 0;
    let mut out = BufWriter::new(file);
    if empty {
        serde_json::to_writer(&mut out, &Header::new(model))?;
        out.write_all(b"\n")?;
    }
    for &record in records {
        let line = Line {
            version: CACHE_FORMAT_VERSION,
            record,
        };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Loads a cache that must hold a record for every sub-library.
pub fn load_complete(path: &Path, model: &CostModel, strict: bool) -> Result<CacheLoad> {
    let load = load_records(path, model, strict)?;
    if let Some(missing) = (1..=LIBRARY_COUNT).find(|m| !load.records.contains_key(m)) {
        return Err(Error::InvalidArgument(format!(
            "cache {} is incomplete: {} of {LIBRARY_COUNT} libraries, first missing {missing:#x}",
            path.display(),
            load.records.len()
        )));
    }
    Ok(load)
}

/// Library-scope census result built from cached records alone.
pub fn result_from_records(records: &BTreeMap<u32, LibraryRecord>, masks: &[u32]) -> CensusResult {
    let libraries: Vec<LibraryRecord> = masks.iter().map(|m| records[m]).collect();
    let groups = libraries
        .iter()
        .map(|r| super::GroupRecord {
            mask: r.mask,
            order: r.order,
            universal: r.universal,
        })
        .collect::<Vec<_>>();
    CensusResult {
        scope: CensusScope::Libraries,
        total_pairs: groups.iter().map(|g| g.order - 1).sum(),
        groups,
        libraries: Some(libraries),
        specs: None,
        enumerated_pairs: None,
    }
}

/// A library-scope census that reuses and extends a cache file.
///
/// Only the masks missing from the cache are computed. A cache left with a
/// truncated last line (or with skipped lines) is rewritten cleanly first.
pub fn run_cached(config: &CensusConfig, path: &Path, strict: bool) -> Result<(CensusResult, CacheLoad)> {
    if config.scope != CensusScope::Libraries {
        return Err(Error::Unsupported(
            "the cache holds per-library records; use library scope".into(),
        ));
    }
    let load = load_records(path, &config.model, strict)?;
    if !load.skipped.is_empty() {
        let keep: Vec<LibraryRecord> = load.records.values().copied().collect();
        std::fs::remove_file(path)?;
        save_records(path, &config.model, &keep)?;
    }
    let wanted = config.masks()?;
    let missing: Vec<u32> = wanted
        .iter()
        .copied()
        .filter(|m| !load.records.contains_key(m))
        .collect();
    let mut records = load.records.clone();
    for chunk in missing.chunks(CHUNK_SIZE) {
        let part = run_census(&CensusConfig {
            masks: Some(chunk.to_vec()),
            ..config.clone()
        })?;
        let libs = part.libraries.expect("library scope");
        save_records(path, &config.model, &libs)?;
        records.extend(libs.into_iter().map(|r| (r.mask, r)));
    }
    let result = result_from_records(&records, &wanted);
    Ok((result, load))
}
