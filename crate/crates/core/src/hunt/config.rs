use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use crate::constraints::{Threshold, ThresholdError, DEFAULT_GRID_LOG2};
use crate::Rational;

/// Largest supported Salem degree.
pub const MAX_TWO_D: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("degree 2d = {0} must be even")]
    OddDegree(usize),
    #[error("degree 2d = {0} outside [4, {MAX_TWO_D}]")]
    DegreeOutOfRange(usize),
    #[error(transparent)]
    Threshold(#[from] ThresholdError),
    #[error("worker count must be positive")]
    NoWorkers,
    #[error("grid_log2 = {0} outside [1, 40]")]
    Grid(u32),
    #[error("cannot parse threshold {0:?}: expected p/q with integers p, q > 0")]
    BadThreshold(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub two_d: usize,
    pub eta: Rational,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    pub grid_log2: u32,
    pub out_path: Option<PathBuf>,
}

impl SearchConfig {
    /// Defaults: `eta = 49/37`, one worker, grid `2^-16`, no output file.
    pub fn new(two_d: usize, trials: u64, seed: u64) -> Self {
        SearchConfig {
            two_d,
            eta: Rational::new(49.into(), 37.into()),
            trials,
            seed,
            workers: 1,
            grid_log2: DEFAULT_GRID_LOG2,
            out_path: None,
        }
    }

    pub fn half_degree(&self) -> usize {
        self.two_d / 2
    }

    pub fn validate(&self) -> Result<Threshold, ConfigError> {
        if self.two_d % 2 == 1 {
            return Err(ConfigError::OddDegree(self.two_d));
        }
        if !(4..=MAX_TWO_D).contains(&self.two_d) {
            return Err(ConfigError::DegreeOutOfRange(self.two_d));
        }
        if self.workers == 0 {
            return Err(ConfigError::NoWorkers);
        }
        if !(1..=40).contains(&self.grid_log2) {
            return Err(ConfigError::Grid(self.grid_log2));
        }
        Ok(Threshold::new(self.eta.clone())?)
    }

    /// JSON header written at the top of each run's output.
    pub fn header_line(&self) -> String {
        #[derive(Serialize)]
        struct Header {
            two_d: usize,
            eta: String,
            trials: u64,
            seed: u64,
            workers: usize,
            grid_log2: u32,
        }
        #[derive(Serialize)]
        struct Line {
            run: Header,
        }
        let line = Line {
            run: Header {
                two_d: self.two_d,
                eta: self.eta.to_string(),
                trials: self.trials,
                seed: self.seed,
                workers: self.workers,
                grid_log2: self.grid_log2,
            },
        };
        serde_json::to_string(&line).expect("header serializes")
    }
}

/// Parses an exact threshold `p/q` (or an integer `p`). Decimals are rejected.
pub fn parse_threshold(s: &str) -> Result<Rational, ConfigError> {
    let bad = || ConfigError::BadThreshold(s.to_string());
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.trim_start_matches('-').chars().all(|c| c.is_ascii_digit());
    if !digits(n) || !digits(d) || d.starts_with('-') {
        return Err(bad());
    }
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}
