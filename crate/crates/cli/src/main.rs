//! `geodlab <count|shift|walk|ff|bt|graph> <verb> [--flags]`
//!
//! Every verb writes one table (CSV with a header row, or JSON records) to
//! stdout or `--output`.  Failures exit with status 2 and a one-line JSON
//! error record on stderr.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod cmd;
mod error;
mod input;
mod output;

use error::CliError;
use output::{emit, Format};

#[derive(Parser, Debug)]
#[command(name = "geodlab", version, about = "Geodesic counting, random walk and Bruhat-Tits tree experiments")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when absent or `-`.
    #[arg(long, short, global = true)]
    output: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Common perpendiculars, closed orbits and conjugacy classes.
    #[command(subcommand)]
    Count(cmd::count::CountCmd),
    /// Subshifts of finite type: pressure, equilibrium states, Gibbs audits.
    #[command(subcommand)]
    Shift(cmd::shift::ShiftCmd),
    /// Non-backtracking walks, tree walks and the Laplacian.
    #[command(subcommand)]
    Walk(cmd::walk::WalkCmd),
    /// Arithmetic over F_q[Y] and F_q((1/Y)).
    #[command(subcommand)]
    Ff(cmd::ff::FfCmd),
    /// The Bruhat-Tits tree of PGL2 over F_q((1/Y)).
    #[command(subcommand)]
    Bt(cmd::bt::BtCmd),
    /// Graph-of-groups documents.
    #[command(subcommand)]
    Graph(cmd::graph::GraphCmd),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let table = match cli.command {
        Command::Count(c) => cmd::count::run(c)?,
        Command::Shift(c) => cmd::shift::run(c)?,
        Command::Walk(c) => cmd::walk::run(c)?,
        Command::Ff(c) => cmd::ff::run(c)?,
        Command::Bt(c) => cmd::bt::run(c)?,
        Command::Graph(c) => cmd::graph::run(c)?,
    };
    emit(&table, cli.format, cli.output.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            eprintln!("{}", CliError::Usage(first).record());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(2)
        }
    }
}
