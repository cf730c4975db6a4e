use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::certify::{certify, compute_tau, SalemRecord};
use crate::constraints::Threshold;

/// Append-only collection of records keyed by the full coefficient vector.
#[derive(Debug, Default, Clone)]
pub struct ResultStore {
    records: Vec<SalemRecord>,
    keys: HashSet<Vec<i64>>,
}

impl ResultStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `rec` unless a record with the same `full_coeffs` is present.
    pub fn dedup_insert(&mut self, rec: SalemRecord) -> bool {
        if !self.keys.insert(rec.full_coeffs.clone()) {
            return false;
        }
        self.records.push(rec);
        true
    }

    pub fn records(&self) -> &[SalemRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn contains_half(&self, half: &[i64]) -> bool {
        self.records.iter().any(|r| r.half_coeffs == half)
    }

    /// Re-certifies every record from its `q_coeffs`; returns the offending
    /// records, empty when all pass.
    pub fn verify(&self, thr: &Threshold) -> Vec<&SalemRecord> {
        self.records
            .iter()
            .filter(|r| match certify(&r.q_poly(), thr) {
                Ok(cert) => compute_tau(&cert) != r.tau || !r.is_consistent(),
                Err(_) => true,
            })
            .collect()
    }

    /// Reads records from a JSONL result file, skipping run headers.
    pub fn load_into(&mut self, path: &Path) -> io::Result<usize> {
        let file = File::open(path)?;
        let mut inserted = 0;
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let value: serde_json::Value = serde_json::from_str(&line).map_err(|e| {
                io::Error::new(io::ErrorKind::InvalidData, format!("{}:{}: {e}", path.display(), lineno + 1))
            })?;
            if value.get("run").is_some() {
                continue;
            }
            let rec: SalemRecord = serde_json::from_value(value).map_err(|e| {
                io::Error::new(io::ErrorKind::InvalidData, format!("{}:{}: {e}", path.display(), lineno + 1))
            })?;
            if self.dedup_insert(rec) {
                inserted += 1;
            }
        }
        Ok(inserted)
    }
}

/// Line-oriented JSONL sink in append mode.
pub struct JsonlWriter {
    out: BufWriter<File>,
}

impl JsonlWriter {
    pub fn append(path: &Path) -> io::Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(JsonlWriter { out: BufWriter::new(file) })
    }

    pub fn write_line(&mut self, line: &str) -> io::Result<()> {
        self.out.write_all(line.as_bytes())?;
        self.out.write_all(b"\n")?;
        self.out.flush()
    }

    pub fn write_record(&mut self, rec: &SalemRecord) -> io::Result<()> {
        let line = serde_json::to_string(rec).map_err(io::Error::other)?;
        self.write_line(&line)
    }
}
