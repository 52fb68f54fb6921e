//! `cocyclic`: JSON in, JSON out. Exit status 0 when nothing was violated,
//! 1 when a check found a violation, 2 on an error.

mod commands;

use std::process::ExitCode;

use clap::Parser;

use commands::{Cli, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violations) => ExitCode::from(1),
        Err(e) => {
            let report = serde_json::json!({
                "code": e.code(),
                "message": e.to_string(),
                "witness": e.witness(),
            });
            eprintln!("{report}");
            ExitCode::from(2)
        }
    }
}
