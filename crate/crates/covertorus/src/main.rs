use std::io::{self, IsTerminal, Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = covertorus::cli::run_with(std::env::args().skip(1), || {
        let stdin = io::stdin();
        let mut input = String::new();
        if !stdin.is_terminal() {
            stdin.lock().read_to_string(&mut input)?;
        }
        Ok(input)
    });
    let _ = io::stdout().write_all(out.stdout.as_bytes());
    let _ = io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
