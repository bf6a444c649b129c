//! Command-line front end for `covercalc-core`.
//!
//! [`run`] parses an argument vector, executes one command and returns the
//! exit code together with the text written to stdout and stderr, so the
//! whole CLI can be driven in-process.

mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use covercalc_core::cover::{admissible_primes, fox_order, hfk_dim_upper, is_zp_homology_sphere, skp_set};
use covercalc_core::geometry::{dilatation_upper, gromov_norm_bound, km_volume_bound, FixSample};
use covercalc_core::knot::{Knot, KnotError, KnotTable};
use covercalc_core::primes::is_prime_u64;
use covercalc_core::ribbon::{filter_predecessors, obstruct, ObstructParams};
use num_bigint::BigUint;
use serde::Deserialize;
use thiserror::Error;

pub use output::{
    BoundsOut, CoverOut, CoverRow, DilatationOut, FilterOut, HfkOut, Num, ObstructOut, Output,
    SkpOut, SphereFlag, TableCheckOut, TableCheckRow, TableListOut, TableRow,
};

/// Environment variable naming the default knot table.
pub const TABLE_ENV: &str = "COVERCALC_TABLE";

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code for an obstructed candidate under `--strict`.
pub const EXIT_OBSTRUCTED: i32 = 1;
/// Exit code for usage and data errors.
pub const EXIT_USAGE: i32 = 2;

/// Upper end of the admissible-prime listing in `skp`.
const ADMISSIBLE_LIMIT: u64 = 50;

#[derive(Debug, Parser)]
#[command(name = "covercalc", version, about = "Branched-cover invariants, ribbon obstructions and geometric bounds for knot tables")]
pub struct Cli {
    /// Knot table JSON file (default: $COVERCALC_TABLE, then the bundled table).
    #[arg(long, global = true, value_name = "PATH")]
    table: Option<PathBuf>,

    /// Emit machine-readable JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect the knot table.
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
    /// Orders of H1 of the branched cyclic covers.
    Cover(CoverArgs),
    /// Prime obstruction set S_{K,p}.
    Skp(SkpArgs),
    /// Run the ribbon-concordance checks for the candidate J <= K.
    Obstruct(ObstructArgs),
    /// Table entries J whose candidacy J <= K is not obstructed.
    Filter(FilterArgs),
    /// Gromov-norm, HFK and dilatation/volume bounds.
    Bounds(BoundsArgs),
    /// Re-render JSON output of any command as text.
    Render {
        /// JSON file, or `-`/absent for stdin.
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum TableAction {
    /// List every entry.
    List,
    /// Validate every entry and report the cross-checks applied.
    Check,
}

#[derive(Debug, Args)]
struct CoverArgs {
    name: String,
    /// Inclusive range `a..b`, or a single degree.
    #[arg(long = "n", value_name = "RANGE", value_parser = parse_range)]
    range: (u64, u64),
    /// Also test for Z/p-homology spheres (repeatable).
    #[arg(long = "p", value_name = "P", value_parser = parse_prime)]
    primes: Vec<u64>,
}

#[derive(Debug, Args)]
struct SkpArgs {
    name: String,
    #[arg(short = 'p', long = "p", value_name = "P", value_parser = parse_prime)]
    p: u64,
}

#[derive(Debug, Args)]
struct ObstructArgs {
    j: String,
    k: String,
    /// Primes for the S_{K,p} checks (repeatable; default 2, 3, 5).
    #[arg(long = "p", value_name = "P", value_parser = parse_prime)]
    primes: Vec<u64>,
    /// Largest cover degree for the H1 divisibility checks.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    max_n: Option<u64>,
    /// Exit with status 1 when the candidate is obstructed.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct FilterArgs {
    k: String,
    #[arg(long = "p", value_name = "P", value_parser = parse_prime)]
    primes: Vec<u64>,
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    max_n: Option<u64>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    name: String,
    /// Arc index (default: from the table).
    #[arg(long, value_name = "D")]
    delta: Option<u64>,
    /// Genus (default: from the table).
    #[arg(long, value_name = "G")]
    genus: Option<u64>,
    /// JSON list of fixed-point samples `[{"n":2,"count":9},...]`.
    #[arg(long, value_name = "FILE")]
    samples: Option<PathBuf>,
}

/// Errors that end a run with [`EXIT_USAGE`].
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error("{0}")]
    Compute(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON in {what}: {source}")]
    Json {
        what: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Invalid(String),
}

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunResult {
    fn ok(stdout: String, code: i32) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Runs the CLI with the table override taken from the process environment.
pub fn run<I, T>(argv: I) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(argv, std::env::var_os(TABLE_ENV).map(PathBuf::from))
}

/// Runs the CLI with an explicit value for the table environment variable.
pub fn run_with_env<I, T>(argv: I, env_table: Option<PathBuf>) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunResult {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                RunResult::ok(text, EXIT_OK)
            };
        }
    };
    match execute(&cli, env_table) {
        Ok((out, code)) => {
            let stdout = if cli.json && !matches!(cli.command, Command::Render { .. }) {
                let mut s = serde_json::to_string_pretty(&out).expect("output is serializable");
                s.push('\n');
                s
            } else {
                out.render_text()
            };
            RunResult::ok(stdout, code)
        }
        Err(e) => RunResult::error(e),
    }
}

fn execute(cli: &Cli, env_table: Option<PathBuf>) -> Result<(Output, i32), CliError> {
    if let Command::Render { file } = &cli.command {
        let text = read_input(file.as_deref())?;
        let out = Output::from_json(&text).map_err(|source| CliError::Json {
            what: "render input".into(),
            source,
        })?;
        return Ok((out, EXIT_OK));
    }
    let table = load_table(cli.table.clone().or(env_table))?;
    let out = match &cli.command {
        Command::Table { action } => match action {
            TableAction::List => Output::TableList(table_list(&table)),
            TableAction::Check => Output::TableCheck(table_check(&table)),
        },
        Command::Cover(a) => Output::Cover(cover(table.lookup(&a.name)?, a)?),
        Command::Skp(a) => Output::Skp(skp(table.lookup(&a.name)?, a.p)?),
        Command::Obstruct(a) => {
            let (j, k) = (table.lookup(&a.j)?, table.lookup(&a.k)?);
            let report = obstruct(j, k, &params(&a.primes, a.max_n));
            let code = if a.strict && !report.passed() {
                EXIT_OBSTRUCTED
            } else {
                EXIT_OK
            };
            return Ok((Output::Obstruct(ObstructOut { report }), code));
        }
        Command::Filter(a) => {
            let k = table.lookup(&a.k)?;
            let predecessors = filter_predecessors(k, &table, &params(&a.primes, a.max_n));
            Output::Filter(FilterOut {
                knot: k.name.clone(),
                predecessors,
            })
        }
        Command::Bounds(a) => Output::Bounds(bounds(table.lookup(&a.name)?, a)?),
        Command::Render { .. } => unreachable!("handled above"),
    };
    Ok((out, EXIT_OK))
}

fn load_table(path: Option<PathBuf>) -> Result<KnotTable, CliError> {
    match path {
        Some(p) => Ok(KnotTable::from_path(p)?),
        None => Ok(KnotTable::bundled()),
    }
}

fn read_input(file: Option<&std::path::Path>) -> Result<String, CliError> {
    match file {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|source| CliError::Read {
            path: p.display().to_string(),
            source,
        }),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Read {
                    path: "stdin".into(),
                    source,
                })?;
            Ok(s)
        }
    }
}

fn params(primes: &[u64], max_n: Option<u64>) -> ObstructParams {
    let mut p = ObstructParams::default();
    if !primes.is_empty() {
        p.primes = primes.to_vec();
    }
    if let Some(n) = max_n {
        p.max_n = n;
    }
    p
}

fn table_list(table: &KnotTable) -> TableListOut {
    TableListOut {
        knots: table
            .iter()
            .map(|k| TableRow {
                name: k.name.clone(),
                alexander: k.alexander.coeffs().iter().cloned().map(Num).collect(),
                genus: k.genus,
                arc_index: k.arc_index,
                fibered: k.fibered,
                seifert: k.seifert.is_some(),
            })
            .collect(),
    }
}

fn table_check(table: &KnotTable) -> TableCheckOut {
    // Loading already validated every entry; report which checks applied.
    TableCheckOut {
        entries: table.len(),
        rows: table
            .iter()
            .map(|k| TableCheckRow {
                name: k.name.clone(),
                seifert: k.seifert.is_some(),
                genus_bound: k.genus.is_some(),
                fibered_genus: k.fibered && k.genus.is_some(),
            })
            .collect(),
    }
}

fn cover(knot: &Knot, a: &CoverArgs) -> Result<CoverOut, CliError> {
    let (lo, hi) = a.range;
    let rows = (lo..=hi)
        .map(|n| {
            let o = fox_order(knot, n).map_err(compute)?;
            let spheres = a
                .primes
                .iter()
                .map(|&p| {
                    Ok(SphereFlag {
                        p,
                        sphere: is_zp_homology_sphere(knot, n, p).map_err(compute)?,
                    })
                })
                .collect::<Result<_, CliError>>()?;
            Ok(CoverRow {
                n,
                infinite: o.is_infinite(),
                order: Num(o.order),
                zp_sphere: spheres,
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(CoverOut {
        knot: knot.name.clone(),
        primes: a.primes.clone(),
        rows,
    })
}

fn skp(knot: &Knot, p: u64) -> Result<SkpOut, CliError> {
    let set = skp_set(knot, p).map_err(compute)?;
    let admissible = admissible_primes(knot, p, ADMISSIBLE_LIMIT).map_err(compute)?;
    Ok(SkpOut {
        knot: knot.name.clone(),
        p,
        set: set.iter().cloned().map(Num).collect(),
        admissible_limit: ADMISSIBLE_LIMIT,
        admissible,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleRecord {
    n: u32,
    count: Num<BigUint>,
}

fn bounds(knot: &Knot, a: &BoundsArgs) -> Result<BoundsOut, CliError> {
    let genus = a.genus.or(knot.genus.map(u64::from));
    let delta = a.delta.or(knot.arc_index.map(u64::from));
    if genus.is_none() && delta.is_none() && a.samples.is_none() {
        return Err(CliError::Invalid(format!(
            "{} has no genus or arc index in the table; pass --genus/--delta or --samples",
            knot.name
        )));
    }
    let gromov = match (genus, delta) {
        (Some(g), Some(d)) if g >= 1 => Some(gromov_norm_bound(g, d).map_err(compute)?),
        _ => None,
    };
    let hfk = match delta {
        Some(d) => {
            let b = hfk_dim_upper(d, 1).map_err(compute)?;
            Some(HfkOut {
                tight: Num(b.tight),
                loose: Num(b.loose),
            })
        }
        None => None,
    };
    let dilatation = match &a.samples {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Read {
                path: path.display().to_string(),
                source,
            })?;
            let records: Vec<SampleRecord> =
                serde_json::from_str(&text).map_err(|source| CliError::Json {
                    what: path.display().to_string(),
                    source,
                })?;
            let samples: Vec<FixSample> = records
                .into_iter()
                .map(|r| FixSample::new(r.n, r.count.0))
                .collect();
            let est = dilatation_upper(&samples).map_err(compute)?;
            let volume = match genus {
                Some(g) if g >= 1 && !est.degenerate => {
                    Some(km_volume_bound(1 - 2 * g as i64, est.upper).map_err(compute)?)
                }
                _ => None,
            };
            Some(DilatationOut {
                upper: est.upper,
                degenerate: est.degenerate,
                volume,
            })
        }
        None => None,
    };
    Ok(BoundsOut {
        knot: knot.name.clone(),
        genus,
        delta,
        gromov,
        hfk,
        dilatation,
    })
}

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("`{t}` is not a nonnegative integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let n = parse(s)?;
            (n, n)
        }
    };
    if lo == 0 {
        return Err("cover degrees start at 1".into());
    }
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s
        .parse()
        .map_err(|_| format!("`{s}` is not a nonnegative integer"))?;
    if is_prime_u64(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..6"), Ok((2, 6)));
        assert_eq!(parse_range("4"), Ok((4, 4)));
        assert!(parse_range("0..3").is_err());
        assert!(parse_range("6..2").is_err());
        assert!(parse_range("a..b").is_err());
        assert!(parse_range("-1").is_err());
    }

    #[test]
    fn primes() {
        assert_eq!(parse_prime("7"), Ok(7));
        assert!(parse_prime("1").is_err());
        assert!(parse_prime("9").is_err());
    }

    #[test]
    fn default_params() {
        assert_eq!(params(&[], None), ObstructParams::default());
        let p = params(&[7], Some(4));
        assert_eq!((p.primes, p.max_n), (vec![7], 4));
    }
}
