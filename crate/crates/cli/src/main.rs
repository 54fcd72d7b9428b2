use std::process::ExitCode;

use clap::Parser;
use multibanana_cli::{emit, run, Cli, UsageError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("multibanana: {e:#}");
            return if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            };
        }
    };
    if let Err(e) = emit(&outcome, &mut std::io::stdout().lock(), &mut std::io::stderr().lock()) {
        eprintln!("multibanana: {e:#}");
        return ExitCode::FAILURE;
    }
    if outcome.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
