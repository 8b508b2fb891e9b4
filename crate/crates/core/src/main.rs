use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use prelie::scenario::{self, exit_code};
use prelie::Error;

/// Exact checks, searches and cohomology for pre-Lie algebra scenarios.
#[derive(Parser)]
#[command(name = "prelie", version)]
struct Cli {
    /// Also write the result as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check of a scenario file.
    Check { file: PathBuf },
    /// Run the built-in corpus.
    Corpus {
        /// Only entries whose id contains this text.
        #[arg(long)]
        filter: Option<String>,
        /// Parameter samples per family check (at least 8).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Cohomology dimensions for each bimodule of a scenario.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
    },
    /// Run only the search operations of a scenario.
    Search { file: PathBuf },
    /// Brackets and coboundaries of the cochains of a scenario.
    Bracket { file: PathBuf },
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), Error> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).expect("results serialize");
        std::fs::write(p, text + "\n").map_err(|e| Error::Validation(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let json = cli.json.as_deref();
    match &cli.command {
        Command::Check { file } => {
            let out = scenario::run_scenario_str(&read(file)?, None)?;
            println!("{out}");
            write_json(json, &out)?;
            Ok(out.passed)
        }
        Command::Corpus { filter, samples } => {
            let out = scenario::run_corpus(filter.as_deref(), *samples)?;
            println!("{out}");
            write_json(json, &out)?;
            Ok(out.passed)
        }
        Command::Cohomology { file, nmax } => {
            let rows = scenario::run_cohomology(&read(file)?, *nmax)?;
            for (name, table) in &rows {
                println!("{name}:");
                println!("  {:>2} {:>9} {:>8} {:>8} {:>5}", "n", "cochains", "rank ∂_n", "rank ∂_n-1", "dim");
                for r in table {
                    println!("  {:>2} {:>9} {:>8} {:>8} {:>5}", r.n, r.cochains, r.rank_out, r.rank_in, r.dim);
                }
            }
            write_json(json, &rows)?;
            Ok(true)
        }
        Command::Search { file } => {
            let out = scenario::run_search(&read(file)?)?;
            println!("{out}");
            write_json(json, &out)?;
            Ok(out.passed)
        }
        Command::Bracket { file } => {
            let out = scenario::run_brackets(&read(file)?)?;
            for r in &out {
                println!("{}: {}", r.label, serde_json::to_string(&r.cochain).expect("cochains serialize"));
            }
            write_json(json, &out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
