//! `wendroff` — build, inspect, verify, and plot embedded orthogonal
//! polynomial sequences from the command line.
//!
//! Exit codes: 0 success (for `verify`: every property holds), 1 runtime or
//! I/O failure (for `verify`: a property failed), 2 bad parameters or usage,
//! 3 construction aborted.

mod commands;
mod figure;

use clap::Parser;

use commands::Cmd;

#[derive(Debug, Parser)]
#[command(
    name = "wendroff",
    version,
    about = "Exact construction and certified zero analysis of embedded orthogonal polynomial sequences",
    after_help = "Fractions are exact: write -5/4, never -1.25. \
                  WENDROFF_TOL overrides the default refinement tolerance (1/1000000); \
                  --tol overrides both."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

fn main() {
    // Clap reports usage errors on stderr and exits 2 by itself.
    let cli = Cli::parse();
    match commands::run(cli.cmd) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
