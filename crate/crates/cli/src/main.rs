use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cayleyseq::app::OutputFormat;
use cayleyseq::{run, Cli};

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            match cli.format {
                OutputFormat::Json => {
                    let body = serde_json::json!({
                        "error": { "code": e.code(), "message": e.to_string(), "line": e.line() }
                    });
                    eprintln!("{body}");
                }
                OutputFormat::Text => eprintln!("error[{}]: {e}", e.code()),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
