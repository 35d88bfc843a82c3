use std::process::ExitCode;

use clap::Parser;
use symglue::cli::{run, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr();
    match run(&config, &mut out, &mut err) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
