use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = hyperweyl::cli::Args::parse();
    hyperweyl::cli::main_with(args)
}
