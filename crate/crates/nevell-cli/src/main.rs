use std::process::ExitCode;

fn main() -> ExitCode {
    nevell_cli::run()
}
