use std::io::Write;

use clap::Parser;
use dgpair_cli::commands::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    let text = match &out.report {
        serde_json::Value::String(text) => text.clone(),
        report => serde_json::to_string_pretty(report).expect("serializable") + "\n",
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if out.code == 2 {
        if let Some(e) = out.report.get("error").and_then(|e| e.as_str()) {
            eprintln!("error: {e}");
        }
    } else if let Some(failed) = out
        .report
        .get("failed_equations")
        .and_then(|f| f.as_array())
    {
        for f in failed {
            eprintln!("failed equation: {}", f.as_str().unwrap_or_default());
        }
    }
    std::process::exit(out.code);
}
