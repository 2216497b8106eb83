use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use swan_cli::explain::explain;
use swan_cli::report::render_text;
use swan_cli::{run, CliError, RunOptions, Scenario};

#[derive(Parser)]
#[command(name = "swan", version, about = "Exact Swan spectral sequences, group cohomology and Borel oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario's tasks; prints a table and optionally writes the JSON report.
    Run {
        scenario: PathBuf,
        /// Where to write the JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Last spectral sequence page to report (default: the stable page).
        #[arg(long)]
        max_page: Option<usize>,
        /// Seed for the randomized demo tasks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the JSON report to stdout instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Print cell, resolution and Borel sizes without computing cohomology.
    Explain { scenario: PathBuf },
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("swan: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Explain { scenario } => match Scenario::load(&scenario) {
            Ok(s) => {
                print!("{}", explain(&s));
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
        Command::Run { scenario, out, max_page, seed, json } => {
            let s = match Scenario::load(&scenario) {
                Ok(s) => s,
                Err(e) => return fail(&e),
            };
            let opts = RunOptions { max_page, seed, ..RunOptions::default() };
            let outcome = run(&s, &opts);
            let body = outcome.report.to_json();
            if let Some(path) = &out {
                if let Err(source) = std::fs::write(path, &body) {
                    return fail(&CliError::Io { path: path.display().to_string(), source });
                }
            }
            if json {
                print!("{body}");
            } else {
                print!("{}", render_text(&outcome.report, &outcome.timings));
            }
            if let Some(e) = &outcome.first_error {
                eprintln!("swan: {e}");
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
    }
}
