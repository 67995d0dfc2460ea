use std::io::{self, Read, Write};
use std::process::ExitCode;

use mirror_core::cli::{config_from_args, run, Command, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    let config = match config_from_args(std::env::args_os()) {
        Ok(c) => c,
        Err((code, msg)) => {
            if code == EXIT_OK {
                print!("{msg}");
            } else {
                eprint!("{msg}");
            }
            return ExitCode::from(code as u8);
        }
    };

    let mut input = String::new();
    if config.term_text.is_none() && config.command != Command::Check {
        if let Err(e) = io::stdin().read_to_string(&mut input) {
            eprintln!("error: reading standard input: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }

    let (code, out) = run(&config, &input);
    let written = if code == EXIT_USAGE {
        io::stderr().write_all(out.as_bytes())
    } else {
        io::stdout().write_all(out.as_bytes())
    };
    if written.is_err() {
        return ExitCode::FAILURE;
    }
    ExitCode::from(code as u8)
}
