use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = affinet::cli::Cli::parse();
    match affinet::cli::execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
