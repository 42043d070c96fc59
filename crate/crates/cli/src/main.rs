mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Report(a) => commands::report(a),
        Command::Ni(a) => commands::ni(a),
        Command::Case(a) => commands::case(a),
        Command::Map(a) => commands::map(a),
        Command::Rank(a) => commands::rank_cmd(a),
    };
    match out {
        Ok(text) => {
            // a closed pipe is not worth a panic
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
