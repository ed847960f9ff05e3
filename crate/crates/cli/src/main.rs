use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use entlyap::{execute, CommandKind, Format, Options};

#[derive(Parser)]
#[command(name = "entlyap", version, about = "Lyapunov entanglement control experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML config file.
    #[arg(long, global = true, default_value = "entlyap.toml")]
    config: PathBuf,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "ENTLYAP_THREADS", default_value_t = 0)]
    threads: usize,
    /// Format of the data files; summaries are always JSON.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// One closed-loop trajectory.
    Run,
    /// Terminal classes over the Bell tetrahedron.
    Basin,
    /// Maximally entangled mixed states for one or more spectra.
    Mems,
    /// Three-qubit runs.
    Multi,
    /// Axiom check of a pure-state measure.
    Validate,
}

#[derive(ValueEnum, Clone, Copy)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Command::Run => CommandKind::Run,
        Command::Basin => CommandKind::Basin,
        Command::Mems => CommandKind::Mems,
        Command::Multi => CommandKind::Multi,
        Command::Validate => CommandKind::Validate,
    };
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let opts = Options { config: cli.config, out: cli.out, seed: cli.seed, threads: cli.threads, format };
    match execute(command, &opts) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("entlyap: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
