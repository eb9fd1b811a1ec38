use std::process::ExitCode;

use clap::Parser;
use greenjump::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            println!("{}", report.render(cli.json));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
