use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(isrecon::cli::run())
}
