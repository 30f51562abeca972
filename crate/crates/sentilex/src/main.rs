use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::LevelFilter;
use sentilex::{cmd_build, cmd_evaluate, cmd_score, ReportFormat, RunConfig};

/// Build sentiment lexicons, score corpora and measure polarity agreement.
#[derive(Parser)]
#[command(name = "sentilex", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Project the source lexicon through the mapping and merge manual entries
    Build(Common),
    /// Score every corpus document with one lexicon
    Score(Common),
    /// Compare document polarity across lexicons
    Evaluate(Common),
}

#[derive(Args)]
struct Common {
    /// Run configuration file
    #[arg(long)]
    config: PathBuf,
    /// Output directory, overriding [output] dir
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report formats, overriding [output] formats (table, json, csv)
    #[arg(long, value_delimiter = ',')]
    format: Option<Vec<ReportFormat>>,
}

fn init_logging() {
    let level = match std::env::var("SENTILEX_LOG").as_deref() {
        Ok("quiet") => LevelFilter::Off,
        Ok("debug") => LevelFilter::Debug,
        Ok("info") | Err(_) => LevelFilter::Info,
        Ok(other) => {
            eprintln!("sentilex: unknown SENTILEX_LOG value {other:?}, using info");
            LevelFilter::Info
        }
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_target(false)
        .init();
}

fn main() -> ExitCode {
    init_logging();
    let cli = Cli::parse();
    let (run, common): (fn(&RunConfig) -> _, Common) = match cli.command {
        Cmd::Build(c) => (cmd_build, c),
        Cmd::Score(c) => (cmd_score, c),
        Cmd::Evaluate(c) => (cmd_evaluate, c),
    };
    let result = RunConfig::load(&common.config).and_then(|mut config| {
        if let Some(out) = common.out {
            config.output_dir = out;
        }
        if let Some(formats) = common.format {
            config.formats = formats;
        }
        run(&config)
    });
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sentilex: error: {e}");
            ExitCode::FAILURE
        }
    }
}
