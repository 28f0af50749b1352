//! Command-line front end: loads a rule file, dispatches to the analysis
//! library, prints a deterministic text summary, and optionally writes the
//! full report as JSON.

mod parser;
mod report;
mod spec;

use std::fmt;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mlca::automaton::{companion, PeriodicConfig};
use mlca::dynamics;
use serde::Serialize;

use report::CountRow;
use spec::{RuleSpec, SpecError};

/// Seed used when neither the command line nor the rule file provides one.
const DEFAULT_SEED: u64 = 0x6d6c_6361;

#[derive(Parser)]
#[command(
    name = "mlca",
    version,
    about = "Exact temporal analysis of multiband linear cellular automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Rule file (JSON: p, r, entries, optional blocks/seed/n_check/l_max/n_max_field)
    #[arg(long, value_name = "FILE")]
    rule: PathBuf,
    /// Write the full report as pretty-printed JSON to this path
    #[arg(long, value_name = "FILE")]
    json_out: Option<PathBuf>,
    /// Worker threads for the per-n sweeps (default: all cores)
    #[arg(long, value_name = "COUNT")]
    threads: Option<usize>,
    /// Seed for the verification tower; overrides the rule file
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: invariants, counts, zeta, orbits, oracle cross-checks
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Number of configurations fixed by the n-th iterate
    Fixcount {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: u64,
    },
    /// Zeta-function classification with leading Taylor coefficients
    Zeta {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Periodic-orbit counts with asymptotic residuals
    Orbits {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 12)]
        lmax: u64,
    },
    /// Evolve a periodic configuration step by step
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Comma-separated cell values, cell-major: all bands of cell 0,
        /// then cell 1, and so on
        #[arg(long)]
        config: String,
        #[arg(long, default_value_t = 5)]
        steps: u64,
    },
    /// Check the field-side correspondence on this rule
    Verify {
        #[command(flatten)]
        common: Common,
        /// Largest field level; every divisor level is checked
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Build the block-companion rule of a higher-order recursion
    Companion {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Analyze { common }
            | Command::Fixcount { common, .. }
            | Command::Zeta { common, .. }
            | Command::Orbits { common, .. }
            | Command::Simulate { common, .. }
            | Command::Verify { common, .. }
            | Command::Companion { common } => common,
        }
    }
}

#[derive(Debug)]
enum AppError {
    Spec(SpecError),
    Analysis(mlca::Error),
    Io(std::io::Error),
    Usage(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Analysis(_) => 1,
            AppError::Spec(_) | AppError::Io(_) | AppError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Spec(e) => e.fmt(f),
            AppError::Analysis(e) => e.fmt(f),
            AppError::Io(e) => e.fmt(f),
            AppError::Usage(msg) => f.write_str(msg),
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

/// Prints the text summary and, when requested, writes the JSON form.
fn emit<T: Serialize>(common: &Common, body: &T, text: &str) -> Result<(), AppError> {
    print!("{text}");
    if let Some(path) = &common.json_out {
        let mut json = serde_json::to_string_pretty(body).expect("reports serialize");
        json.push('\n');
        std::fs::write(path, json).map_err(AppError::Io)?;
    }
    Ok(())
}

fn run() -> Result<(), AppError> {
    let cli = Cli::parse();
    let common = cli.command.common();
    if let Some(threads) = common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    let spec = RuleSpec::load(&common.rule).map_err(AppError::Spec)?;
    let seed = common.seed.or(spec.seed).unwrap_or(DEFAULT_SEED);

    match &cli.command {
        Command::Analyze { common } => {
            let rule = spec.rule().map_err(AppError::Spec)?;
            let report = report::analyze(&spec, &rule, seed).map_err(AppError::Analysis)?;
            emit(common, &report, &report.render_text())
        }
        Command::Fixcount { common, n } => {
            if *n == 0 {
                return Err(AppError::Usage("--n must be at least 1".into()));
            }
            let rule = spec.rule().map_err(AppError::Spec)?;
            let log = dynamics::log_fix_count(&rule, *n).map_err(AppError::Analysis)?;
            let row = CountRow {
                n: *n,
                log,
                count: report::decimal_count(rule.p(), log),
            };
            let text = match &row.count {
                Some(c) => format!("log_p #Fix(g^{n}) = {log}\n#Fix(g^{n}) = {c}\n"),
                None => format!("log_p #Fix(g^{n}) = {log}\n"),
            };
            emit(common, &row, &text)
        }
        Command::Zeta { common, order } => {
            let rule = spec.rule().map_err(AppError::Spec)?;
            let z = report::zeta_report(&rule, *order).map_err(AppError::Analysis)?;
            let text = format!(
                "zeta: {}\nseries to order {}: {}\n",
                z.kind,
                z.order,
                z.series.join(", ")
            );
            emit(common, &z, &text)
        }
        Command::Orbits { common, lmax } => {
            if *lmax == 0 {
                return Err(AppError::Usage("--lmax must be at least 1".into()));
            }
            let rule = spec.rule().map_err(AppError::Spec)?;
            let with_asymptotics = match dynamics::invariants(&rule, Some(1)) {
                Ok(inv) => inv.a >= 1,
                Err(mlca::Error::NotConfined) => false,
                Err(e) => return Err(AppError::Analysis(e)),
            };
            let o = report::orbit_report(&rule, *lmax, with_asymptotics)
                .map_err(AppError::Analysis)?;
            let mut text = format!("orbit counts, l = 1..{}: {}\n", o.l_max, o.counts.join(", "));
            if let Some(m) = &o.max_residual {
                writeln!(text, "max normalized residual: {m}").unwrap();
            }
            emit(common, &o, &text)
        }
        Command::Simulate {
            common,
            config,
            steps,
        } => {
            let rule = spec.rule().map_err(AppError::Spec)?;
            let flat = config
                .split(',')
                .map(|tok| {
                    tok.trim().parse::<u64>().map_err(|_| {
                        AppError::Usage(format!("cell value {tok:?} is not a nonnegative integer"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = PeriodicConfig::from_flat(rule.p(), rule.bands(), &flat)
                .map_err(|e| AppError::Usage(e.to_string()))?;
            let sim = report::simulate(&rule, &cfg, *steps).map_err(AppError::Analysis)?;
            let mut text = String::new();
            for (t, line) in sim.steps.iter().enumerate() {
                writeln!(text, "t = {t}: {line}").unwrap();
            }
            emit(common, &sim, &text)
        }
        Command::Verify { common, nmax } => {
            let n_max = nmax.or(spec.n_max_field).unwrap_or(6);
            if n_max == 0 {
                return Err(AppError::Usage("--nmax must be at least 1".into()));
            }
            let rule = spec.rule().map_err(AppError::Spec)?;
            let v = report::verify(&rule, n_max, seed).map_err(AppError::Analysis)?;
            let mut text = String::new();
            for row in &v.rows {
                if row.failures.is_empty() {
                    let mode = if row.exhaustive { "exhaustive" } else { "sampled" };
                    writeln!(
                        text,
                        "n = {}, level {}: pass ({mode}, {} vectors, log counts {}/{})",
                        row.n, row.level, row.vectors_checked, row.field_fixed_log,
                        row.sequence_fixed_log
                    )
                    .unwrap();
                } else {
                    writeln!(
                        text,
                        "n = {}, level {}: FAIL ({})",
                        row.n,
                        row.level,
                        row.failures.join("; ")
                    )
                    .unwrap();
                }
            }
            let failed = v.rows.iter().filter(|r| !r.failures.is_empty()).count();
            if v.all_passed {
                writeln!(text, "all checks pass").unwrap();
            } else {
                writeln!(text, "{failed} of {} checks failed", v.rows.len()).unwrap();
            }
            emit(common, &v, &text)?;
            if v.all_passed {
                Ok(())
            } else {
                Err(AppError::Analysis(mlca::Error::Inconsistency(format!(
                    "{failed} correspondence checks failed"
                ))))
            }
        }
        Command::Companion { common } => {
            let blocks = spec.companion_blocks().map_err(AppError::Spec)?;
            let rule = companion(&blocks).map_err(AppError::Analysis)?;
            let out_spec = RuleSpec::from_rule(&rule, &spec);
            let mut json = serde_json::to_string_pretty(&out_spec).expect("specs serialize");
            json.push('\n');
            emit(common, &out_spec, &json)
        }
    }
}
