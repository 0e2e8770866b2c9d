use std::io;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use covosc::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = RunConfig::from_cli(cli).and_then(|config| run(&config, &mut io::stdout().lock()));
    match outcome {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("covosc: {e}");
            ExitCode::from(1)
        }
    }
}
