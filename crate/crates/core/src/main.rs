use std::process::ExitCode;

fn main() -> ExitCode {
    pseudofree::cli::run()
}
