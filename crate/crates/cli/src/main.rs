use std::process::ExitCode;

use clap::Parser;
use cstar_cli::{dispatch, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(dispatch::run(&cli.command))
}
