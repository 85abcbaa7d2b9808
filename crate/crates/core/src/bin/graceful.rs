use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = graceful_core::cli::run(std::env::args_os());
    let mut out = std::io::stdout().lock();
    if !result.payload.is_null() {
        // a closed pipe is not worth reporting
        let _ = out.write_all(result.render().as_bytes());
    }
    let _ = out.flush();
    for line in &result.diagnostics {
        eprintln!("{line}");
    }
    ExitCode::from(result.exit_code() as u8)
}
