use std::process::ExitCode;

use clap::Parser;
use gwcorr_cli::{run, Cli};
use serde_json::json;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, value) = match run(&cli) {
        Ok(out) => (out.code, out.value),
        Err(e) => {
            eprintln!("error: {e}");
            (e.exit_code(), json!({ "error": e.to_string() }))
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("serializable");
    println!("{text}");
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code as u8)
}
