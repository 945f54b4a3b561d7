use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use cverify_cli::explain::explain;
use cverify_cli::selftest::selftest;
use cverify_cli::{run_query, CliError, Query};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "cverify",
    version,
    about = "Fuel-bounded verification of classifiers and learners"
)]
struct Cli {
    /// Override the query's fuel budget.
    #[arg(long, global = true)]
    max_fuel: Option<u32>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a query and print its report.
    Verify { query: PathBuf },
    /// Describe what a query computes without running it.
    Explain { query: PathBuf },
    /// Run the bundled golden corpus.
    Selftest,
}

fn init_threads(n: Option<usize>) -> anyhow::Result<()> {
    #[cfg(feature = "parallel")]
    if let Some(n) = n {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path, max_fuel: Option<u32>) -> Result<Query, CliError> {
    let mut q = Query::from_file(path)?;
    if let Some(m) = max_fuel {
        q.max_fuel = m;
    }
    Ok(q)
}

fn run(cli: &Cli) -> anyhow::Result<i32> {
    init_threads(cli.threads)?;
    match &cli.command {
        Command::Verify { query } => {
            let start = Instant::now();
            let result = load(query, cli.max_fuel).and_then(|q| run_query(&q));
            let report = match result {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return Ok(e.exit_code());
                }
            };
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => format!(
                    "{}wall time: {:.3}s\n",
                    report.to_text(),
                    start.elapsed().as_secs_f64()
                ),
            };
            emit(&cli.out, &text)?;
            Ok(report.exit_code())
        }
        Command::Explain { query } => match load(query, cli.max_fuel) {
            Ok(q) => {
                emit(&cli.out, &explain(&q))?;
                Ok(0)
            }
            Err(e) => {
                eprintln!("{e}");
                Ok(e.exit_code())
            }
        },
        Command::Selftest => {
            let (summary, ok) = selftest();
            emit(&cli.out, &summary)?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
