use std::process::ExitCode;

fn main() -> ExitCode {
    oddhadwiger::cli::main()
}
