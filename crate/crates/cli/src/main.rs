use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gcgeom_cli::error::CliError;
use gcgeom_cli::report::Report;
use gcgeom_cli::{run_job, Command, Format, Options};

/// Exact verifier for generalized complex geometry.
#[derive(Parser, Debug)]
#[command(name = "gcgeom", version)]
struct Args {
    command: Command,
    /// Input document; `-` reads standard input.
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random cases for `axiom-suite`.
    #[arg(long)]
    cases: Option<usize>,
    /// Polynomial degree bound for witness searches.
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Number of sample points for rank checks.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map(|()| s).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options {
        seed: args.seed,
        cases: args.cases,
        degree_bound: args.degree_bound,
        samples: args.samples,
    };
    let report = match read(&args.input) {
        Ok(text) => run_job(args.command, &text, &opts),
        Err(e) => Report::new(&args.command.name(), args.seed, Err(e), 0),
    };
    print!("{}", report.emit(args.format));
    ExitCode::from(report.verdict.exit_code())
}
