use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ordlab_cli::config::Curve;
use ordlab_cli::report::{read_csv, DensityReport};
use ordlab_cli::scan::{run_scan, ScanOptions};
use ordlab_cli::{oracle, CliError};

#[derive(Parser)]
#[command(name = "ordlab", version, about = "Ordinary-prime scans for curves with quadratic multiplication")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every prime in a range; writes CSV to --out and JSON beside it.
    Scan {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 5)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
        /// Defaults to the available parallelism.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Allow pmax beyond the genus cap (300 for g = 3, 60 for g = 4).
        #[arg(long)]
        force: bool,
    },
    /// Drive the brute-force oracles.
    Oracle {
        #[command(subcommand)]
        mode: OracleMode,
    },
    /// Recompute the JSON summary of an existing scan CSV.
    Report {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        curve: PathBuf,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleMode {
    /// List all Weil polynomials for (q, g).
    Weil {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: usize,
    },
    /// Pairwise-product forcing check.
    Refinement {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        g: usize,
    },
    /// Unit-root additivity on a product of CM elliptic curves.
    Cm {
        #[arg(long)]
        p: u64,
        /// Replace the third factor by y^2 = x^3 - x.
        #[arg(long)]
        mixed: bool,
    },
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Scan { curve, pmin, pmax, workers, out, cache, force } => {
            let curve = Curve::load(&curve)?;
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let opts = ScanOptions { pmin, pmax, workers, cache, force };
            let scan = run_scan(&curve, &opts)?;
            let json_path = out.with_extension("json");
            write(&out, &scan.csv)?;
            write(&json_path, &scan.json)?;
            let r = &scan.report;
            println!(
                "{}: {} primes, {} good, ordinary {}/{}, {} cache hits -> {}, {}",
                curve.spec,
                r.primes,
                r.good,
                r.ordinary_total,
                r.good,
                scan.cache_hits,
                out.display(),
                json_path.display()
            );
            Ok(())
        }
        Command::Oracle { mode } => {
            let text = match mode {
                OracleMode::Weil { q, g } => oracle::weil(q, g)?,
                OracleMode::Refinement { q, g } => oracle::refinement(q, g)?,
                OracleMode::Cm { p, mixed } => oracle::cm(p, mixed)?,
            };
            print!("{text}");
            Ok(())
        }
        Command::Report { csv, curve, out } => {
            let curve = Curve::load(&curve)?;
            let text = std::fs::read_to_string(&csv)
                .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", csv.display())))?;
            let json = DensityReport::from_rows(&curve, &read_csv(&text)?)?.to_json();
            match out {
                Some(path) => write(&path, &json),
                None => {
                    print!("{json}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
