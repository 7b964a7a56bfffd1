//! Command line entry point.

use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out, err) = webfolio::cli::main_with_args(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
