mod commands;
mod config;
mod svg;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use config::{Cli, JobConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match JobConfig::resolve(cli).and_then(|job| commands::run(&job)) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            for line in &out.lines {
                // A closed pipe (as under `head`) is not an error.
                if writeln!(stdout, "{line}").is_err() {
                    break;
                }
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
