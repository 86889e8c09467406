use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use vertex_cli::commands::{run, Cli, Format, UsageError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    match run(&cli, format!("vxa {echo}")) {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Machine => println!("{}", report.to_json()),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
