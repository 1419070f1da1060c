use std::process::ExitCode;

use bialg_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    let text = report.render();
    match &cli.common.json {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            println!("[{}] {}: {}", report.status.as_str(), report.command, report.summary);
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.status.exit_code())
}
