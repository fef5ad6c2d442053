use std::process::ExitCode;

fn main() -> ExitCode {
    skewrank::cli::run(std::env::args_os(), &mut std::io::stdout().lock())
}
