use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = stv_cli::Args::parse();
    ExitCode::from(stv_cli::main_with(args))
}
