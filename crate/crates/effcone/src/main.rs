use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(effcone::cli::cli(std::env::args()) as u8)
}
