//! Memoized verdicts, optionally persisted as line-delimited JSON.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use coxlen_core::{CoxeterSystem, Word};
use lru::LruCache;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::input::MatrixJson;

/// One persisted line. `canonical_word` holds 1-based generator indices of
/// the shortlex-least reduced expression, so every word for the same element
/// shares a record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub group_hash: String,
    pub canonical_word: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_identity: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflection_length: Option<usize>,
}

/// Verdicts known for one element.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Verdicts {
    pub is_identity: Option<bool>,
    pub reflection_length: Option<usize>,
}

impl Verdicts {
    fn merge(&mut self, other: Verdicts) {
        self.is_identity = other.is_identity.or(self.is_identity);
        self.reflection_length = other.reflection_length.or(self.reflection_length);
    }
}

/// SHA-256 of the compact JSON matrix, hex encoded.
pub fn group_hash(sys: &CoxeterSystem) -> String {
    let json = serde_json::to_string(&MatrixJson::of(sys)).expect("matrix serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

type Key = (String, Vec<u8>);

/// LRU memo in front of an optional append-only JSONL file.
#[derive(Debug)]
pub struct ResultCache {
    memo: LruCache<Key, Verdicts>,
    file: Option<File>,
    path: Option<PathBuf>,
    hits: u64,
}

impl ResultCache {
    pub fn in_memory(capacity: usize) -> Self {
        let capacity = NonZeroUsize::new(capacity.max(1)).expect("nonzero");
        ResultCache { memo: LruCache::new(capacity), file: None, path: None, hits: 0 }
    }

    /// Loads the records in `path` (creating the file if needed) and appends
    /// new ones to it. Unparseable lines are skipped with a warning.
    pub fn open(path: &Path, capacity: usize) -> Result<Self, CliError> {
        let mut cache = ResultCache::in_memory(capacity);
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (lineno, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheRecord>(&line) {
                    Ok(rec) => match record_key(&rec) {
                        Some(key) => cache.merge(key, verdicts_of(&rec)),
                        None => log::warn!("{}:{}: skipping cache record with a zero letter", path.display(), lineno + 1),
                    },
                    Err(e) => log::warn!("{}:{}: skipping corrupt cache record: {e}", path.display(), lineno + 1),
                }
            }
        }
        cache.file = Some(OpenOptions::new().create(true).append(true).open(path)?);
        cache.path = Some(path.to_path_buf());
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Lookups that returned a stored reflection length or identity verdict.
    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn reflection_length(&mut self, group_hash: &str, canonical: &Word) -> Option<usize> {
        let found = self.memo.get(&(group_hash.to_string(), canonical.letters().to_vec()))?.reflection_length;
        self.hits += u64::from(found.is_some());
        found
    }

    pub fn is_identity(&mut self, group_hash: &str, canonical: &Word) -> Option<bool> {
        let found = self.memo.get(&(group_hash.to_string(), canonical.letters().to_vec()))?.is_identity;
        self.hits += u64::from(found.is_some());
        found
    }

    /// Stores `verdicts` and appends them to the backing file, one line per
    /// write so a crash never leaves a partial record behind a complete one.
    pub fn store(&mut self, group_hash: &str, canonical: &Word, verdicts: Verdicts) -> Result<(), CliError> {
        let key = (group_hash.to_string(), canonical.letters().to_vec());
        if self.memo.peek(&key) == Some(&verdicts) {
            return Ok(());
        }
        self.merge(key, verdicts);
        if let Some(file) = self.file.as_mut() {
            let rec = CacheRecord {
                group_hash: group_hash.to_string(),
                canonical_word: canonical.iter().map(|&a| a as usize + 1).collect(),
                is_identity: verdicts.is_identity,
                reflection_length: verdicts.reflection_length,
            };
            let mut line = serde_json::to_string(&rec).expect("record serializes");
            line.push('\n');
            file.write_all(line.as_bytes())?;
            file.flush()?;
        }
        Ok(())
    }

    fn merge(&mut self, key: Key, verdicts: Verdicts) {
        match self.memo.get_mut(&key) {
            Some(v) => v.merge(verdicts),
            None => {
                self.memo.put(key, verdicts);
            }
        }
    }
}

fn record_key(rec: &CacheRecord) -> Option<Key> {
    let letters = rec
        .canonical_word
        .iter()
        .map(|&i| i.checked_sub(1).and_then(|a| u8::try_from(a).ok()))
        .collect::<Option<Vec<u8>>>()?;
    Some((rec.group_hash.clone(), letters))
}

fn verdicts_of(rec: &CacheRecord) -> Verdicts {
    Verdicts { is_identity: rec.is_identity, reflection_length: rec.reflection_length }
}
