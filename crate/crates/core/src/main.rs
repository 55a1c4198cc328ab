use std::process::ExitCode;

fn main() -> ExitCode {
    etsemi::cli::run(std::env::args_os())
}
