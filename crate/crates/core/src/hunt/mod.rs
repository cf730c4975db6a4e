//! Search driver: repeated randomized trials, a deduplicating store, and
//! JSONL result files.

mod config;
mod search;
mod store;

pub use config::{parse_threshold, ConfigError, SearchConfig, MAX_TWO_D};
pub use search::{run_search, run_trial, HuntError, SearchSummary, TrialOutcome};
pub use store::{JsonlWriter, ResultStore};
