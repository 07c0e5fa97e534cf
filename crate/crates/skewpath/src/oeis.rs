//! OEIS sequence fetching with a local cache and a strict offline mode.
//!
//! Terms come from b-files ("index value" lines, `#` comments allowed).
//! In offline mode only the given fixture file is read and no network
//! code runs at all; online mode consults a cache directory first and
//! stores fetched b-files with atomic replace-on-write.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

/// Where a sequence record came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Network,
    Cache,
    Fixture,
}

/// An integer sequence with its starting index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    /// "A" followed by six digits.
    pub id: String,
    pub terms: Vec<BigInt>,
    /// Index of the first term.
    pub offset: i64,
    pub source: Source,
}

#[derive(Debug, thiserror::Error)]
pub enum OeisError {
    #[error("malformed OEIS id {id:?}: expected 'A' followed by six digits")]
    MalformedId { id: String },
    #[error("sequence {id} not found ({detail})")]
    NotFound { id: String, detail: String },
    #[error("network unavailable fetching {id}: {detail}")]
    NetworkUnavailable { id: String, detail: String },
    #[error("b-file parse error at line {line}: {detail}")]
    ParseError { line: usize, detail: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Validate the "A" + six digits shape.
pub fn check_id(id: &str) -> Result<(), OeisError> {
    let ok = id.len() == 7
        && id.starts_with('A')
        && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(OeisError::MalformedId { id: id.to_string() })
    }
}

/// Parse b-file text into (terms, offset). Indices must be contiguous.
pub fn parse_b_file(text: &str) -> Result<(Vec<BigInt>, i64), OeisError> {
    let mut terms = Vec::new();
    let mut offset: Option<i64> = None;
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value)) = (fields.next(), fields.next()) else {
            return Err(OeisError::ParseError {
                line: line_no + 1,
                detail: format!("expected 'index value', got {line:?}"),
            });
        };
        let index: i64 = index.parse().map_err(|e| OeisError::ParseError {
            line: line_no + 1,
            detail: format!("bad index {index:?}: {e}"),
        })?;
        let value: BigInt = value.parse().map_err(|e| OeisError::ParseError {
            line: line_no + 1,
            detail: format!("bad value {value:?}: {e}"),
        })?;
        match offset {
            None => offset = Some(index),
            Some(first) => {
                let expected = first + terms.len() as i64;
                if index != expected {
                    return Err(OeisError::ParseError {
                        line: line_no + 1,
                        detail: format!("index {index} out of order, expected {expected}"),
                    });
                }
            }
        }
        terms.push(value);
    }
    match offset {
        Some(offset) if !terms.is_empty() => Ok((terms, offset)),
        _ => Err(OeisError::ParseError {
            line: 0,
            detail: "no terms found".to_string(),
        }),
    }
}

#[derive(Debug, Clone)]
enum Mode {
    Offline { fixture: PathBuf },
    Online { cache_dir: Option<PathBuf> },
}

/// Sequence fetcher. Offline instances never construct a network client.
#[derive(Debug, Clone)]
pub struct OeisClient {
    mode: Mode,
}

impl OeisClient {
    /// Fixture-only client: reads the given b-file and nothing else.
    pub fn offline(fixture: impl Into<PathBuf>) -> Self {
        OeisClient {
            mode: Mode::Offline {
                fixture: fixture.into(),
            },
        }
    }

    /// Network client with an optional cache directory.
    pub fn online(cache_dir: Option<PathBuf>) -> Self {
        OeisClient {
            mode: Mode::Online { cache_dir },
        }
    }

    pub fn fetch(&self, id: &str) -> Result<SequenceRecord, OeisError> {
        check_id(id)?;
        match &self.mode {
            Mode::Offline { fixture } => fetch_fixture(id, fixture),
            Mode::Online { cache_dir } => fetch_online(id, cache_dir.as_deref()),
        }
    }
}

fn fetch_fixture(id: &str, fixture: &Path) -> Result<SequenceRecord, OeisError> {
    let text = fs::read_to_string(fixture).map_err(|e| OeisError::NotFound {
        id: id.to_string(),
        detail: format!("fixture {}: {e}", fixture.display()),
    })?;
    let (terms, offset) = parse_b_file(&text)?;
    Ok(SequenceRecord {
        id: id.to_string(),
        terms,
        offset,
        source: Source::Fixture,
    })
}

fn b_file_name(id: &str) -> String {
    format!("b{}.txt", &id[1..])
}

fn fetch_online(id: &str, cache_dir: Option<&Path>) -> Result<SequenceRecord, OeisError> {
    if let Some(dir) = cache_dir {
        let path = dir.join(b_file_name(id));
        if let Ok(text) = fs::read_to_string(&path) {
            let (terms, offset) = parse_b_file(&text)?;
            return Ok(SequenceRecord {
                id: id.to_string(),
                terms,
                offset,
                source: Source::Cache,
            });
        }
    }

    let url = format!("https://oeis.org/{id}/{}", b_file_name(id));
    let text = http_get(id, &url)?;
    let (terms, offset) = parse_b_file(&text)?;

    if let Some(dir) = cache_dir {
        write_cache(dir, &b_file_name(id), &text)?;
    }
    Ok(SequenceRecord {
        id: id.to_string(),
        terms,
        offset,
        source: Source::Network,
    })
}

fn http_get(id: &str, url: &str) -> Result<String, OeisError> {
    match ureq::get(url).call() {
        Ok(mut response) => response
            .body_mut()
            .read_to_string()
            .map_err(|e| OeisError::NetworkUnavailable {
                id: id.to_string(),
                detail: e.to_string(),
            }),
        Err(ureq::Error::StatusCode(404)) => Err(OeisError::NotFound {
            id: id.to_string(),
            detail: "HTTP 404".to_string(),
        }),
        Err(e) => Err(OeisError::NetworkUnavailable {
            id: id.to_string(),
            detail: e.to_string(),
        }),
    }
}

/// Atomic replace-on-write so concurrent fetches cannot corrupt a cache
/// entry: write to a temporary sibling, then rename into place.
fn write_cache(dir: &Path, name: &str, text: &str) -> Result<(), OeisError> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(text.as_bytes())?;
        file.sync_all()?;
    }
    fs::rename(&tmp, dir.join(name))?;
    Ok(())
}

/// Outcome of comparing a fetched record against locally generated terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub id: String,
    /// Largest index requested for comparison.
    pub upto: usize,
    /// Number of indices actually compared.
    pub compared: usize,
    pub first_mismatch: Option<Mismatch>,
    /// The record ran out before `upto`.
    pub fixture_exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub record_term: BigInt,
    pub local_term: BigInt,
}

impl VerifyReport {
    pub fn is_match(&self) -> bool {
        self.first_mismatch.is_none() && self.compared > 0
    }
}

/// Compare `local[i]` (term for index i) against the record for all
/// indices up to `upto`, honoring the record's offset.
pub fn verify_sequence(record: &SequenceRecord, local: &[BigInt], upto: usize) -> VerifyReport {
    let mut compared = 0usize;
    let mut first_mismatch = None;
    for (j, term) in record.terms.iter().enumerate() {
        let index = record.offset + j as i64;
        if index < 0 {
            continue;
        }
        let i = index as usize;
        if i > upto || i >= local.len() {
            break;
        }
        compared += 1;
        if &local[i] != term {
            first_mismatch = Some(Mismatch {
                index,
                record_term: term.clone(),
                local_term: local[i].clone(),
            });
            break;
        }
    }
    let last_record_index = record.offset + record.terms.len() as i64 - 1;
    VerifyReport {
        id: record.id.clone(),
        upto,
        compared,
        first_mismatch,
        fixture_exhausted: last_record_index < upto as i64,
    }
}
