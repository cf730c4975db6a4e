//! Command-line front end: `search`, `verify` and `table`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use crate::certify::{certify, compute_tau, SalemRecord};
use crate::constraints::{Threshold, DEFAULT_GRID_LOG2};
use crate::hunt::{parse_threshold, run_search, HuntError, ResultStore, SearchConfig};
use crate::transform::{p_from_half, p_to_q};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REJECTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "salem", version, about = "Search for small Salem numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run randomized trials and append certified finds to a JSONL file.
    Search {
        #[arg(long)]
        two_d: usize,
        /// Exact threshold `p/q`.
        #[arg(long, default_value = "49/37")]
        threshold: String,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_GRID_LOG2)]
        grid_log2: u32,
    },
    /// Certify a reciprocal polynomial given by its leading half `1 c1 ... cd`.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        half_coeffs: String,
        #[arg(long, default_value = "49/37")]
        threshold: String,
    },
    /// Merge result files and print them sorted by value.
    Table {
        #[arg(long = "in", num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
    },
}

/// Parses `args` (program name first) and runs the command; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Search { two_d, threshold, trials, seed, workers, out: path, grid_log2 } => {
            let eta = match parse_threshold(&threshold) {
                Ok(eta) => eta,
                Err(e) => return usage(e),
            };
            let cfg = SearchConfig { two_d, eta, trials, seed, workers, grid_log2, out_path: path };
            cmd_search(&cfg, &mut out)
        }
        Command::Verify { half_coeffs, threshold } => cmd_verify(&half_coeffs, &threshold, &mut out),
        Command::Table { inputs } => cmd_table(&inputs, &mut out),
    }
}

fn usage(e: impl std::fmt::Display) -> i32 {
    eprintln!("error: {e}");
    EXIT_USAGE
}

fn cmd_search(cfg: &SearchConfig, out: &mut impl Write) -> i32 {
    if let Err(e) = cfg.validate() {
        return usage(e);
    }
    match run_search(cfg) {
        Ok(summary) => {
            let _ = writeln!(out, "{summary}");
            for rec in summary.store.records() {
                let _ = writeln!(out, "{}", table_row(rec));
            }
            EXIT_OK
        }
        Err(HuntError::Config(e)) => usage(e),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}

/// Parses `"1 c1 ... cd"`; the list must start with 1 and have at least two entries.
pub fn parse_half_coeffs(s: &str) -> Result<Vec<BigInt>, String> {
    let coeffs = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigInt>().map_err(|_| format!("bad coefficient {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.len() < 2 {
        return Err("need at least two coefficients".into());
    }
    if coeffs[0] != BigInt::from(1) {
        return Err("leading coefficient must be 1".into());
    }
    Ok(coeffs)
}

fn cmd_verify(half: &str, threshold: &str, out: &mut impl Write) -> i32 {
    let coeffs = match parse_half_coeffs(half) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let thr = match parse_threshold(threshold).map_err(|e| e.to_string()).and_then(|eta| {
        Threshold::new(eta).map_err(|e| e.to_string())
    }) {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let p = p_from_half(&coeffs);
    let q = match p_to_q(&p) {
        Ok(q) => q,
        Err(e) => return usage(e),
    };
    match certify(&q, &thr) {
        Ok(cert) => {
            let _ = writeln!(out, "certified {} tau {}", p.degree(), compute_tau(&cert));
            EXIT_OK
        }
        Err(rej) => {
            let _ = writeln!(out, "rejected {}: {rej}", rej.label());
            EXIT_REJECTED
        }
    }
}

/// One table line: degree, value, then the half coefficients.
pub fn table_row(rec: &SalemRecord) -> String {
    let mut s = format!("{} {}", rec.two_d, rec.tau);
    for c in &rec.half_coeffs {
        s.push(' ');
        s.push_str(&c.to_string());
    }
    s
}

pub const TABLE_HEADER: &str = "2d tau half_coeffs";

/// Merged, deduplicated rows sorted by value, then degree, then coefficients.
pub fn table_lines(store: &ResultStore) -> Vec<String> {
    let mut recs: Vec<&SalemRecord> = store.records().iter().collect();
    recs.sort_by(|a, b| {
        (&a.tau, a.two_d, &a.full_coeffs).cmp(&(&b.tau, b.two_d, &b.full_coeffs))
    });
    recs.into_iter().map(table_row).collect()
}

fn cmd_table(inputs: &[PathBuf], out: &mut impl Write) -> i32 {
    let mut store = ResultStore::new();
    for path in inputs {
        if let Err(e) = store.load_into(path) {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_IO;
        }
    }
    let _ = writeln!(out, "{TABLE_HEADER}");
    for line in table_lines(&store) {
        let _ = writeln!(out, "{line}");
    }
    EXIT_OK
}
