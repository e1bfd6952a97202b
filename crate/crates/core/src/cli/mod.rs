//! The `latdensity` command-line front end.
//!
//! Every command emits a [`RunRecord`] as JSON (default) or its result table
//! as CSV on standard output; progress goes to standard error. Unless
//! `--no-persist` is given, the record and CSV are also written to
//! `<runs-dir>/<run_id>/{record.json, results.csv}`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or domain error,
//! 3 enumeration budget exceeded, 4 parse error.

pub mod commands;
pub mod input;
pub mod record;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::density::{EnumOptions, Enumeration, TargetSet, DEFAULT_BUDGET};
use crate::error::Error;
use crate::solve::Ring;
use commands::{DensityArgs, Output};
use input::parse_radii;
use record::{run_id, RunRecord};

/// Environment variable overriding the enumeration budget.
pub const BUDGET_ENV: &str = "LATDENSITY_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "latdensity",
    version,
    about = "Solvability, lattice counts and densities of linear systems over Z^m"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Maximum number of enumerated coefficient matrices (also LATDENSITY_BUDGET).
    #[arg(long, global = true, value_parser = parse_budget)]
    pub budget: Option<u128>,
    /// Do not write runs/<run_id>/.
    #[arg(long, global = true)]
    pub no_persist: bool,
    /// Directory for persisted runs.
    #[arg(long, global = true, default_value = "runs")]
    pub runs_dir: PathBuf,
    /// Enumerate symmetry orbits (default) or every matrix.
    #[arg(long, global = true, value_enum, default_value_t = EnumerationArg::Orbits)]
    pub enumeration: EnumerationArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerationArg {
    Orbits,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    #[value(name = "Z", alias = "z")]
    Z,
    #[value(name = "Q", alias = "q")]
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    #[value(alias = "monte-carlo")]
    Mc,
}

/// One radius (`--r`) or a range (`--radii start..stop..step`).
#[derive(Args, Debug, Clone)]
pub struct RadiusArgs {
    #[arg(long, conflicts_with = "radii")]
    pub r: Option<u64>,
    #[arg(long)]
    pub radii: Option<String>,
}

impl RadiusArgs {
    fn resolve(&self) -> Result<Vec<u64>, Error> {
        match (&self.r, &self.radii) {
            (Some(r), None) => Ok(vec![*r]),
            (None, Some(text)) => parse_radii(text),
            _ => Err(Error::Domain("give --r or --radii".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide solvability of A X = B and print witness or certificate.
    Solve {
        #[arg(long, value_enum, default_value_t = RingArg::Z)]
        ring: RingArg,
        /// System file: the A block followed by the B block.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        file: Option<PathBuf>,
        /// Inline coefficient matrix, e.g. "2 3; 1 0".
        #[arg(long)]
        a: Option<String>,
        /// Inline right-hand side.
        #[arg(long)]
        b: Option<String>,
    },
    /// Exact or Monte Carlo density of a matrix or system set.
    Density {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// sat-z, sat-q, full-rank, unimodular or rank-eq-<s>.
        #[arg(long, default_value = "sat-z")]
        set: String,
        #[command(flatten)]
        radius: RadiusArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ehrhart quasipolynomial of the cube counts of a full-rank lattice.
    Ehrhart {
        /// Matrix file with the lattice generators as columns.
        #[arg(long, conflicts_with = "inline")]
        file: Option<PathBuf>,
        #[arg(long)]
        inline: Option<String>,
        #[arg(long, default_value_t = 10)]
        t_max: u64,
    },
    /// F_{m,k,n}(r) = sum of gcd(A)^-m over full-rank A.
    Gcdsum {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        radius: RadiusArgs,
    },
    /// F_{1,n,n}(r) against r^(n^2-n) ln r.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        radius: RadiusArgs,
    },
    /// Exact SAT_Z density next to F / (2r)^(nk).
    Linkage {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        radius: RadiusArgs,
    },
    /// Counts of n x k matrices by rank.
    RankHist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        radius: RadiusArgs,
    },
    /// Counts of n x n matrices by determinant.
    DetHist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u64,
    },
    /// Closed-form limit densities and bounds.
    Bounds {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// zeta(s) with a guaranteed error bound.
    Zeta {
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Solve { .. } => "solve",
            Command::Density { .. } => "density",
            Command::Ehrhart { .. } => "ehrhart",
            Command::Gcdsum { .. } => "gcdsum",
            Command::Conjecture { .. } => "conjecture",
            Command::Linkage { .. } => "linkage",
            Command::RankHist { .. } => "rank-hist",
            Command::DetHist { .. } => "det-hist",
            Command::Bounds { .. } => "bounds",
            Command::Zeta { .. } => "zeta",
        }
    }
}

/// Accepts plain integers and scientific notation such as `1e9`.
fn parse_budget(s: &str) -> Result<u128, String> {
    if let Ok(v) = s.parse::<u128>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v < 3.4e38 => Ok(v as u128),
        _ => Err(format!("'{s}' is not a nonnegative integer budget")),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 4,
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn resolve_budget(flag: Option<u128>) -> Result<u128, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => parse_budget(v.trim()).map_err(|e| format!("{BUDGET_ENV}: {e}")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn execute(cmd: &Command, opts: &EnumOptions, err: &mut dyn Write) -> Result<Output, Error> {
    match cmd {
        Command::Solve { ring, file, a, b } => {
            let ring = match ring {
                RingArg::Z => Ring::Integers,
                RingArg::Q => Ring::Rationals,
            };
            commands::solve(ring, file.as_deref(), a.as_deref(), b.as_deref())
        }
        Command::Density {
            m,
            k,
            n,
            set,
            radius,
            mode,
            samples,
            seed,
        } => {
            let args = DensityArgs {
                m: *m,
                k: *k,
                n: *n,
                set: set.parse::<TargetSet>()?,
                radii: radius.resolve()?,
                monte_carlo: *mode == ModeArg::Mc,
                samples: *samples,
                seed: *seed,
            };
            commands::density(&args, opts, err)
        }
        Command::Ehrhart { file, inline, t_max } => commands::ehrhart(file.as_deref(), inline.as_deref(), *t_max),
        Command::Gcdsum { m, k, n, radius } => commands::gcdsum(*m, *k, *n, &radius.resolve()?, opts, err),
        Command::Conjecture { n, radius } => commands::conjecture(*n, &radius.resolve()?, opts, err),
        Command::Linkage { m, k, n, radius } => commands::linkage(*m, *k, *n, &radius.resolve()?, opts, err),
        Command::RankHist { n, k, radius } => commands::rank_hist(*n, *k, &radius.resolve()?, opts, err),
        Command::DetHist { n, r } => commands::det_hist(*n, *r, opts),
        Command::Bounds { m, k, n } => commands::bounds(*m, *k, *n),
        Command::Zeta { s, tol } => commands::zeta_cmd(*s, *tol),
    }
}

fn persist(dir: &std::path::Path, record: &RunRecord, csv: &str) -> std::io::Result<PathBuf> {
    let path = dir.join(record.run_id.as_deref().expect("persisted records carry an id"));
    std::fs::create_dir_all(&path)?;
    let json = serde_json::to_string_pretty(record).expect("records serialize");
    std::fs::write(path.join("record.json"), json + "\n")?;
    std::fs::write(path.join("results.csv"), csv)?;
    Ok(path)
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 2;
            }
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    let budget = match resolve_budget(cli.global.budget) {
        Ok(b) => b,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let opts = EnumOptions {
        budget,
        enumeration: match cli.global.enumeration {
            EnumerationArg::Orbits => Enumeration::Orbits,
            EnumerationArg::Full => Enumeration::Full,
        },
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return 1;
        }
    };
    let start = Instant::now();
    let result = pool.install(|| execute(&cli.command, &opts, err));
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let command = cli.command.name();
    let summary = output.summary.clone();
    let record = RunRecord {
        run_id: Some(run_id(command, &output.params, output.seed)),
        command: command.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        params: output.params,
        seed: output.seed,
        summary: output.summary,
        results: output.table.objects(),
        wall_time_ms: Some(start.elapsed().as_millis() as u64),
    };
    let csv = output.table.to_csv(summary.as_ref());
    let rendered = match cli.global.format {
        Format::Json => serde_json::to_string_pretty(&record.reproducible()).expect("records serialize") + "\n",
        Format::Csv => csv.clone(),
    };
    if out.write_all(rendered.as_bytes()).is_err() {
        return 1;
    }
    if !cli.global.no_persist {
        match persist(&cli.global.runs_dir, &record, &csv) {
            Ok(path) => {
                let _ = writeln!(err, "[latdensity] saved {}", path.display());
            }
            Err(e) => {
                let _ = writeln!(err, "error: cannot write run directory: {e}");
                return 1;
            }
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["latdensity", "--no-persist"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn budget_syntax() {
        assert_eq!(parse_budget("1e8"), Ok(100_000_000));
        assert_eq!(parse_budget("12"), Ok(12));
        assert!(parse_budget("-1").is_err());
        assert!(parse_budget("1.5").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, err) = run_args(&["density", "--bogus"]);
        assert_eq!(code, 2, "{err}");
        let (code, _, _) = run_args(&["gcdsum", "--k", "1", "--n", "2", "--r", "1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn budget_and_parse_exit_codes() {
        let (code, _, err) = run_args(&["--budget", "10", "density", "--k", "2", "--r", "50"]);
        assert_eq!(code, 3, "{err}");
        let (code, _, err) = run_args(&["solve", "--a", "2 x", "--b", "3"]);
        assert_eq!(code, 4, "{err}");
        assert!(err.contains("line 1, column 3"));
    }
}
