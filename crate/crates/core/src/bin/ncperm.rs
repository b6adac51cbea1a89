use std::process::ExitCode;

use clap::Parser;
use ncperm::cli::{run, Cli, Command, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let record = match run(&cli) {
        Ok(record) => record,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code as u8);
        }
    };
    let json = cli.json
        || matches!(
            cli.command,
            Command::Enumerate {
                format: Format::Json,
                ..
            }
        );
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, record.to_json() + "\n") {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(ncperm::cli::EXIT_USAGE as u8);
        }
    }
    if !cli.quiet {
        if json {
            println!("{}", record.to_json());
        } else {
            for line in &record.lines {
                println!("{line}");
            }
        }
    }
    ExitCode::from(record.exit_code() as u8)
}
