//! `gridsight`: command-line front end for the visibility computations.

mod commands;
mod config;
mod error;

use std::process::ExitCode;

use clap::Parser;

use crate::config::{Cli, RunConfig};

/// Caps rayon's pool when `GRIDSIGHT_THREADS` is a positive integer.
fn init_threads() {
    let Ok(v) = std::env::var("GRIDSIGHT_THREADS") else {
        return;
    };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
        _ => eprintln!("warning: ignoring GRIDSIGHT_THREADS={v:?}"),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    init_threads();
    let result = RunConfig::resolve(cli.opts).and_then(|cfg| commands::run(cli.command, &cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
