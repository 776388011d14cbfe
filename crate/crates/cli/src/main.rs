use std::process::ExitCode;

use clap::Parser;

use heisvc_cli::{emit, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|report| emit(&cli, &report).map(|()| report.passed()));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("heisvc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
