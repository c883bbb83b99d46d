//! `treewidth`: build surfaces that are hard to subdivide, measure them,
//! and check the certificates.
//!
//! Exit codes: 0 success, 2 validation failure, 3 infeasible search,
//! 64 usage error.

mod commands;
mod config;
mod svg;

use clap::error::ErrorKind;
use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Ok(threads) = std::env::var("TREEWIDTH_THREADS") {
        if let Ok(n) = threads.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = match commands::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(64)
                }
            }
        }
    };
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            // infeasible searches exit 3; anything else is an ordinary failure
            if let Some(core_err) = e.downcast_ref::<treewidth_core::Error>() {
                match core_err {
                    treewidth_core::Error::Infeasible(_)
                    | treewidth_core::Error::InfeasibleWithBudget { .. }
                    | treewidth_core::Error::SplitInfeasible { .. } => return ExitCode::from(3),
                    _ => {}
                }
            }
            ExitCode::FAILURE
        }
    }
}
