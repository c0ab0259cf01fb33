use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = sqbetti::cli::RunConfig::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match sqbetti::cli::run(args, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
