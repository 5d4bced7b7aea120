use std::process::ExitCode;

use clap::Parser;
use wed_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    if !out.stdout.is_empty() {
        print!("{}", out.stdout);
    }
    if let Some(err) = &out.stderr {
        eprintln!("wed: {err}");
    }
    ExitCode::from(out.code as u8)
}
