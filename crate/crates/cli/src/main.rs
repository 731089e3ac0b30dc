use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polyfam::conjectures::{builtin_registry, merge_registry, registry_load};
use polyfam::report::CheckRecord;
use polyfam::suites::{run_all, Suite, SuiteConfig, Summary};

#[derive(Parser, Debug)]
#[command(name = "polyfam", version, about = "Run the S_n^(m) verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Inclusive bound on primes (suite default when omitted).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pmax: Option<u64>,
    /// Inclusive bound on indices n (suite default when omitted).
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Decimal digits for the series suite.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    digits: Option<u32>,
    /// Registry record id or prefix (conjectures), or series target id.
    #[arg(long, global = true)]
    id: Option<String>,
    /// JSON-lines registry whose records extend or replace the built-in ones.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Seed for sampled evaluation points.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Polynomial identities, closed forms and recurrences.
    Identities,
    /// Proved congruences and membership statements.
    Theorems,
    /// Auxiliary lemmas.
    Lemmas,
    /// q-log-convexity scans.
    Qlogconvex,
    /// Registry of conjectured congruences and integrality claims.
    Conjectures,
    /// Numerical agreement of series for 1/pi.
    Series,
    /// Every suite, followed by per-suite summaries.
    Report,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Human,
    JsonLines,
    Csv,
}

fn config(cli: &Cli) -> Result<SuiteConfig, String> {
    let registry = match &cli.registry {
        Some(path) => {
            let extra = registry_load(path).map_err(|e| e.to_string())?;
            Some(merge_registry(builtin_registry(), extra))
        }
        None => None,
    };
    Ok(SuiteConfig {
        pmax: cli.pmax,
        nmax: cli.nmax,
        digits: cli.digits,
        id: cli.id.clone(),
        registry,
        seed: cli.seed,
    })
}

fn write_records(out: &mut dyn Write, format: Format, records: &[CheckRecord]) -> io::Result<()> {
    match format {
        Format::Human => {
            for r in records {
                let tag = r.verdict.to_string().to_uppercase();
                write!(out, "{tag:<12} {:<12} {:<24} {}", r.suite, r.id, r.params)?;
                if !r.detail.is_empty() {
                    write!(out, "  {}", r.detail)?;
                }
                writeln!(out)?;
            }
        }
        Format::JsonLines => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in records {
                w.serialize(r).map_err(io::Error::other)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, String> {
    let cfg = config(cli)?;
    let suites: Vec<Suite> = match cli.command {
        Command::Identities => vec![Suite::Identities],
        Command::Theorems => vec![Suite::Theorems],
        Command::Lemmas => vec![Suite::Lemmas],
        Command::Qlogconvex => vec![Suite::QLogConvex],
        Command::Conjectures => vec![Suite::Conjectures],
        Command::Series => vec![Suite::Series],
        Command::Report => Suite::ALL.to_vec(),
    };
    let records = if suites.len() == 1 {
        suites[0].run(&cfg).map_err(|e| e.to_string())?
    } else {
        run_all(&cfg).map_err(|e| e.to_string())?
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    write_records(&mut out, cli.format, &records).map_err(|e| e.to_string())?;
    if cli.format == Format::Human {
        for s in &suites {
            let subset: Vec<CheckRecord> = records.iter().filter(|r| r.suite == s.name()).cloned().collect();
            writeln!(out, "{}: {}", s.name(), Summary::of(&subset)).map_err(|e| e.to_string())?;
        }
    }
    out.flush().map_err(|e| e.to_string())?;
    Ok(Summary::of(&records).ok())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
