use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, doc) = superell::cli::run_cli(std::env::args_os());
    let text = serde_json::to_string_pretty(&doc).expect("json");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code as u8)
}
