use charclass::cli::{self, Cli};
use clap::error::ErrorKind;
use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match cli::run(&cli) {
        Ok(result) => {
            let ok = result.exit_code == 0;
            if cli.json {
                println!("{}", cli::render_json(&result.payload, ok));
            } else {
                print!("{}", cli::render_text(&result.payload));
            }
            ExitCode::from(result.exit_code as u8)
        }
        Err(e) => {
            if cli.json {
                println!("{}", cli::render_json_error(&e));
            }
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code_for(&e) as u8)
        }
    }
}
