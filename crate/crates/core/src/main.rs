use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = rigidtrace::cli::run(std::env::args_os());
    let written = if code == 2 {
        std::io::stderr().lock().write_all(out.as_bytes())
    } else {
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(out.as_bytes())
            .and_then(|_| stdout.flush())
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
