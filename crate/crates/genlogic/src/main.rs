use std::process::ExitCode;

fn main() -> ExitCode {
    genlogic::cli::run()
}
