use clap::Parser;
use multiboost_cli::{configure_threads, execute, Cli};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = std::env::var("MULTIBOOST_THREADS").ok();
    let result = configure_threads(threads.as_deref()).and_then(|_| execute(cli));
    match result {
        Ok(line) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
