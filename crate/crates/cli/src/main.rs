use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use ybe_core::corpus::{read_corpus, sweep, write_corpus};
use ybe_core::field::Characteristic;
use ybe_core::report::{analyze, AnalysisOptions};
use ybe_core::{PropertyFlags, Solution};

#[derive(Parser)]
#[command(
    name = "ybe",
    version,
    about = "Finite set-theoretic solutions of the Yang–Baxter equation"
)]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print property flags; succeeds iff the table is a bijective left non-degenerate solution.
    Validate { file: PathBuf },
    /// Run the full analysis pipeline and print the report.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Field characteristics, 0 for the rationals.
        #[arg(long = "char", value_delimiter = ',', default_value = "0,2,3")]
        chars: Vec<u64>,
        #[arg(long, default_value_t = 4)]
        imax: usize,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
    },
    /// Write one file per isomorphism class and an index.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// all, involutive or rack-form.
        #[arg(long, default_value = "all")]
        filter: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a named property suite over a corpus directory.
    Sweep {
        dir: PathBuf,
        #[arg(long)]
        suite: String,
    },
}

#[derive(Serialize)]
struct ValidateOutput<'a> {
    file: &'a str,
    n: usize,
    flags: PropertyFlags,
    valid: bool,
}

fn emit<T: Serialize>(value: &T, pretty: bool) -> Result<()> {
    let text = if pretty {
        serde_json::to_string_pretty(value)?
    } else {
        serde_json::to_string(value)?
    };
    println!("{text}");
    Ok(())
}

fn load(path: &Path) -> Result<Solution> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Solution::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { file } => {
            let sol = load(&file)?;
            let flags = sol.flags();
            let valid = flags.is_ybe && flags.bijective && flags.left_nd;
            emit(
                &ValidateOutput {
                    file: &file.to_string_lossy(),
                    n: sol.n(),
                    flags,
                    valid,
                },
                cli.pretty,
            )?;
            Ok(if valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Analyze {
            file,
            max_degree,
            chars,
            imax,
            kmax,
        } => {
            let sol = load(&file)?;
            let opts = AnalysisOptions {
                max_degree,
                characteristics: chars.into_iter().map(Characteristic).collect(),
                i_max: imax,
                k_max: kmax,
                ..Default::default()
            };
            let report = analyze(&sol, &opts)?;
            println!("{}", report.to_json(cli.pretty));
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { n, filter, out } => {
            let index = write_corpus(&out, n, &filter)?;
            emit(&index, cli.pretty)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { dir, suite } => {
            let corpus = read_corpus(&dir)?;
            emit(&sweep(&corpus, &suite)?, cli.pretty)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
