use std::process::ExitCode;

use clap::Parser;
use homore_cli::config::{Cli, Command, Suite};
use homore_cli::{cmd_reduce, cmd_verify, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    if let Ok(v) = std::env::var("HOMORE_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("error: cannot start {n} workers: {e}");
                    return ExitCode::from(EXIT_INVALID);
                }
            }
            _ => {
                eprintln!("error: HOMORE_THREADS must be a positive integer, got `{v}`");
                return ExitCode::from(EXIT_INVALID);
            }
        }
    }
    let code = match &cli.command {
        Command::Verify(args) => cmd_verify(args, None),
        Command::Unitalize(args) => cmd_verify(args, Some(Suite::Unitalization)),
        Command::Reduce(args) => cmd_reduce(args),
    };
    ExitCode::from(code)
}
