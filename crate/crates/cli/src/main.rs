use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hypcone_cli::{execute, Cli, CliError, Outcome};

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match cli.jobs {
        Some(jobs) if jobs > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Input(format!("cannot start {jobs} workers: {e}")))?
            .install(|| execute(cli)),
        Some(_) => Err(CliError::Input("--jobs must be positive".into())),
        None => execute(cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.report).expect("report serializes");
            // a closed pipe (e.g. `| head`) is not an error worth a panic
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(if out.verdict { 0 } else { 1 })
        }
        Err(e) => {
            let body = serde_json::json!({"error": e.to_string(), "kind": e.kind()});
            eprintln!("{body}");
            ExitCode::from(e.exit_code())
        }
    }
}
