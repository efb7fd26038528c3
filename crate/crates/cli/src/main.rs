use std::process::ExitCode;

use clap::Parser;
use raag_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(r) => {
            print!("{}", r.output);
            ExitCode::from(r.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
