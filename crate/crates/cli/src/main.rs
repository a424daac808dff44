use std::process::ExitCode;

use clap::Parser;
use privshare_cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match privshare_cli::run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code as u8)
        }
    }
}
