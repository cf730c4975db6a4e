use std::collections::BTreeMap;
use std::io;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use log::{debug, info};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::config::{ConfigError, SearchConfig};
use super::store::{JsonlWriter, ResultStore};
use crate::certify::{certify, Provenance, SalemRecord};
use crate::constraints::{build_system, q_from_assignment, sample_separators, Threshold};
use crate::factorize::{factor, select_salem_factor, SelectError};
use crate::ilpsolve::{ilp_feasible, FeasibilityResult};
use crate::polycore::IntPoly;

#[derive(Debug, Error)]
pub enum HuntError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("feasible point {q} has {count} roots in (2, R) across its factors")]
    MultipleQualifying { q: IntPoly, count: usize },
}

/// Result of a single trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrialOutcome {
    Hit(Box<SalemRecord>),
    NoHit(&'static str),
}

/// One trial: sample, solve, factor, certify.
pub fn run_trial<R: Rng + ?Sized>(
    cfg: &SearchConfig,
    thr: &Threshold,
    rng: &mut R,
    prov: Provenance,
) -> Result<TrialOutcome, HuntError> {
    let sep = sample_separators(cfg.half_degree(), cfg.grid_log2, rng);
    let sys = build_system(&sep, thr);
    let a = match ilp_feasible(&sys) {
        FeasibilityResult::Feasible(a) => a,
        FeasibilityResult::Infeasible => return Ok(TrialOutcome::NoHit("infeasible")),
    };
    let q = q_from_assignment(&a);
    let q1 = match select_salem_factor(&factor(&q), thr) {
        Ok(g) => g,
        Err(SelectError::NoFactor(why)) => {
            debug!("trial {}/{}: {q}: {why}", prov.worker, prov.trial);
            return Ok(TrialOutcome::NoHit("no-factor"));
        }
        Err(SelectError::MultipleQualifying(count)) => {
            return Err(HuntError::MultipleQualifying { q, count });
        }
    };
    match certify(&q1, thr) {
        Ok(cert) => Ok(TrialOutcome::Hit(Box::new(SalemRecord::from_certificate(&cert, prov)))),
        Err(rej) => {
            debug!("trial {}/{}: {q1} rejected: {rej}", prov.worker, prov.trial);
            Ok(TrialOutcome::NoHit(rej.label()))
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchSummary {
    pub trials: u64,
    pub hits: u64,
    pub distinct: usize,
    pub duplicates: u64,
    pub infeasible: u64,
    pub rejections: BTreeMap<&'static str, u64>,
    pub elapsed: Duration,
    pub store: ResultStore,
}

impl std::fmt::Display for SearchSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "trials {} hits {} distinct {} duplicates {} infeasible {} time {:.1}s",
            self.trials,
            self.hits,
            self.distinct,
            self.duplicates,
            self.infeasible,
            self.elapsed.as_secs_f64()
        )?;
        for (label, n) in &self.rejections {
            write!(f, "\n  {label}: {n}")?;
        }
        Ok(())
    }
}

enum Message {
    Outcome(TrialOutcome),
    Failed(HuntError),
}

/// Number of trials for worker `w`.
fn share(total: u64, workers: usize, w: usize) -> u64 {
    let n = workers as u64;
    total / n + u64::from((w as u64) < total % n)
}

/// Runs `cfg.trials` trials across `cfg.workers` threads.
///
/// Worker `w` draws from ChaCha8 seeded with `seed + w`. A single writer
/// deduplicates hits and appends them to `cfg.out_path` when set.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchSummary, HuntError> {
    let thr = cfg.validate()?;
    let start = Instant::now();
    let mut writer = match &cfg.out_path {
        Some(path) => {
            let mut w = JsonlWriter::append(path)?;
            w.write_line(&cfg.header_line())?;
            Some(w)
        }
        None => None,
    };
    let mut summary = SearchSummary::default();
    let mut failure = None;

    std::thread::scope(|scope| {
        let (tx, rx) = mpsc::sync_channel::<Message>(1024);
        for w in 0..cfg.workers {
            let tx = tx.clone();
            let thr = &thr;
            let trials = share(cfg.trials, cfg.workers, w);
            scope.spawn(move || {
                let seed = cfg.seed.wrapping_add(w as u64);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for trial in 0..trials {
                    let prov = Provenance { seed, worker: w, trial };
                    let msg = match run_trial(cfg, thr, &mut rng, prov) {
                        Ok(o) => Message::Outcome(o),
                        Err(e) => Message::Failed(e),
                    };
                    let stop = matches!(msg, Message::Failed(_));
                    if tx.send(msg).is_err() || stop {
                        return;
                    }
                }
            });
        }
        drop(tx);

        for msg in rx {
            match msg {
                Message::Outcome(TrialOutcome::Hit(rec)) => {
                    summary.trials += 1;
                    summary.hits += 1;
                    if !summary.store.dedup_insert((*rec).clone()) {
                        summary.duplicates += 1;
                        continue;
                    }
                    info!("new: 2d={} tau={}", rec.two_d, rec.tau);
                    if let Some(w) = writer.as_mut() {
                        if let Err(e) = w.write_record(&rec) {
                            failure.get_or_insert(HuntError::Io(e));
                            break;
                        }
                    }
                }
                Message::Outcome(TrialOutcome::NoHit(label)) => {
                    summary.trials += 1;
                    if label == "infeasible" {
                        summary.infeasible += 1;
                    } else {
                        *summary.rejections.entry(label).or_default() += 1;
                    }
                }
                Message::Failed(e) => {
                    failure.get_or_insert(e);
                    break;
                }
            }
        }
    });

    if let Some(e) = failure {
        return Err(e);
    }
    summary.distinct = summary.store.len();
    summary.elapsed = start.elapsed();
    Ok(summary)
}
