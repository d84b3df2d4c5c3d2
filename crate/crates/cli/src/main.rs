use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use primdeg_cli::{commands, exit, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    match commands::run(&cli.command, &echo) {
        Ok(report) => {
            let mut out = io::stdout().lock();
            if let Err(e) = report.emit(cli.format, &mut out).and_then(|_| out.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(exit::INPUT);
            }
            eprintln!("elapsed: {:.3?}", start.elapsed());
            if report.verification_failed {
                ExitCode::from(exit::VERIFICATION)
            } else {
                ExitCode::from(exit::OK)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::for_error(&e))
        }
    }
}
