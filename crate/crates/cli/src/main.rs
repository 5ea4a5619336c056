//! `coauthor`: build and analyze coauthorship credit networks.

mod commands;
mod config;
mod error;
mod io;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{Format, Ordering, RunConfig};
use crate::error::{CliError, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "coauthor", version, about = "Directed coauthorship credit networks")]
struct Cli {
    /// JSON run configuration; defaults to $COAUTHOR_CONFIG when set.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format for tables.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Output file; stdout when omitted.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct NetworkOpts {
    /// Distribution factors as JSON, e.g. '{"2":0.21,"3":0.33,"4":0.39}'.
    #[arg(long)]
    factors: Option<String>,

    #[arg(long, value_enum)]
    ordering: Option<Ordering>,

    /// Keep sole-authored papers.
    #[arg(long)]
    include_singles: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Degree,
    Betweenness,
    Closeness,
    Indegree,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Full,
    Transfer,
    Normalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    A,
    B,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit distribution factors to empirical credit shares.
    Fit {
        #[arg(long)]
        empirical: PathBuf,
        #[arg(long)]
        grid_step: Option<f64>,
    },
    /// Build the directed credit network from a corpus.
    Build {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        net: NetworkOpts,
    },
    /// Descriptive statistics of a corpus and its coauthorship network.
    Stats {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        net: NetworkOpts,
    },
    /// Prominence scores per author.
    Measures {
        #[arg(long)]
        network: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        measure: MeasureArg,
        /// Indegree from incoming transfers only, without self-loops.
        #[arg(long)]
        exclude_self: bool,
    },
    /// Fractional ranks of one score column.
    Rank {
        #[arg(long)]
        scores: PathBuf,
        #[arg(long)]
        column: Option<String>,
    },
    /// Kendall rank correlation between every pair of score columns.
    Correlate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "b")]
        variant: VariantArg,
    },
    /// Credit flow between prestige-ranked blocks.
    Blocks {
        #[arg(long)]
        network: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        mode: ModeArg,
        /// Block sizes, best block first.
        #[arg(long, value_delimiter = ',', conflicts_with = "percent")]
        cuts: Option<Vec<usize>>,
        /// Block shares in percent, best block first.
        #[arg(long, value_delimiter = ',')]
        percent: Option<Vec<f64>>,
        /// Score used to rank authors into blocks.
        #[arg(long, value_enum, default_value = "indegree")]
        basis: MeasureArg,
    },
    /// Overlap of the top-K authors with a reference roster.
    Roster {
        #[arg(long)]
        scores: PathBuf,
        #[arg(long)]
        column: Option<String>,
        #[arg(long)]
        roster: PathBuf,
        #[arg(long)]
        top: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    let out = cli.output.as_deref();
    let bytes = match cli.command {
        Command::Fit { empirical, grid_step } => {
            if let Some(step) = grid_step {
                cfg.grid_step = step;
            }
            cfg.validate()?;
            commands::fit(&cfg, &empirical)?
        }
        Command::Build { corpus, net } => {
            apply_network_opts(&mut cfg, &net)?;
            commands::build(&cfg, &corpus)?
        }
        Command::Stats { corpus, net } => {
            apply_network_opts(&mut cfg, &net)?;
            commands::stats(&cfg, &corpus)?
        }
        Command::Measures { network, measure, exclude_self } => {
            commands::measures(&cfg, &network, measure_selection(measure), !exclude_self)?
        }
        Command::Rank { scores, column } => commands::rank(&cfg, &scores, column.as_deref())?,
        Command::Correlate { files, variant } => {
            let v = match variant {
                VariantArg::A => coauthor_core::TauVariant::A,
                VariantArg::B => coauthor_core::TauVariant::B,
            };
            commands::correlate(&cfg, &files, v)?
        }
        Command::Blocks { network, mode, cuts, percent, basis } => {
            let mode = match mode {
                ModeArg::Full => coauthor_core::BlockMode::Full,
                ModeArg::Transfer => coauthor_core::BlockMode::Transfer,
                ModeArg::Normalized => coauthor_core::BlockMode::Normalized,
            };
            let spec = match (cuts, percent, cfg.cuts.clone()) {
                (Some(c), _, _) => coauthor_core::CutSpec::Counts(c),
                (None, Some(p), _) => coauthor_core::CutSpec::Percentages(p),
                (None, None, Some(c)) => coauthor_core::CutSpec::Counts(c),
                (None, None, None) => return Err(CliError::Usage("blocks needs --cuts or --percent".into())),
            };
            let basis = match measure_selection(basis).as_slice() {
                [m] => *m,
                _ => return Err(CliError::Usage("--basis takes a single measure".into())),
            };
            commands::blocks(&cfg, &network, mode, &spec, basis)?
        }
        Command::Roster { scores, column, roster, top } => {
            commands::roster(&cfg, &scores, column.as_deref(), &roster, top)?
        }
    };
    io::emit(out, &bytes)
}

fn apply_network_opts(cfg: &mut RunConfig, opts: &NetworkOpts) -> Result<(), CliError> {
    if let Some(f) = &opts.factors {
        cfg.factors = coauthor_core::FactorPolicy::from_json(f)?;
    }
    if let Some(o) = opts.ordering {
        cfg.ordering = o.into();
    }
    if opts.include_singles {
        cfg.include_singles = true;
    }
    Ok(())
}

fn measure_selection(m: MeasureArg) -> Vec<coauthor_core::Measure> {
    use coauthor_core::Measure;
    match m {
        MeasureArg::Degree => vec![Measure::Degree],
        MeasureArg::Betweenness => vec![Measure::Betweenness],
        MeasureArg::Closeness => vec![Measure::Closeness],
        MeasureArg::Indegree => vec![Measure::Indegree],
        MeasureArg::All => Measure::ALL.to_vec(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("coauthor: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
