use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use toriq_cli::{ingest, run_analyze, run_certify, run_ifunction, text, to_json, Status};

#[derive(Parser)]
#[command(name = "toriq", version, about = "Exact quantum cohomology computations for smooth toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Primitive collections, Mori cone and cohomology.
    Analyze(Args),
    /// I-function, leading terms, two-point invariants and annihilation check.
    Ifunction(Args),
    /// Deformed presentation, module structure and isomorphism certificate.
    Certify(Args),
}

#[derive(clap::Args)]
struct Args {
    /// Catalog name (P1, P2, P1xP1, F0..F3, P1xP2, BlP2) or path to a JSON fan file.
    #[arg(long)]
    fan: String,
    /// Truncation level for the Novikov ring.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(0..))]
    cutoff: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

type Runner = fn(&toriq_cli::Input, i64) -> (toriq_cli::Report, Status);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, run): (&Args, Runner) = match &cli.command {
        Command::Analyze(a) => (a, |i, _| run_analyze(i)),
        Command::Ifunction(a) => (a, run_ifunction),
        Command::Certify(a) => (a, run_certify),
    };
    let input = match ingest(&args.fan) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::InputError.code() as u8);
        }
    };
    let (report, status) = run(&input, args.cutoff);
    let body = match args.format {
        Format::Text => text::render(&report),
        Format::Json => to_json(&report) + "\n",
    };
    // A closed pipe (e.g. `| head`) is not worth a panic.
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    ExitCode::from(status.code() as u8)
}
