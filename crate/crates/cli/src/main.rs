use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tropfglm_cli::commands::{self, ChangeOrderArgs, Failure};
use tropfglm_cli::document::Tiebreak;
use tropfglm_cli::experiment::{ExperimentConfig, Mode};
use tropfglm_core::Strategy;

#[derive(Parser)]
#[command(name = "tropfglm", version, about = "Change of ordering for zero-dimensional ideals over Q_p, Q((t)) and Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    General,
    SemistableShape,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::General => Strategy::General,
            StrategyArg::SemistableShape => Strategy::SemistableShape,
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',').map(|x| x.trim().parse::<T>().map_err(|_| format!("bad list entry {x:?}"))).collect()
}

/// A comma-separated weight vector (a bare `Vec` would read as repeated values).
#[derive(Clone, Debug)]
struct Weight(Vec<i64>);

fn parse_weight(s: &str) -> Result<Weight, String> {
    parse_list(s).map(Weight)
}

#[derive(Subcommand)]
enum Command {
    /// Convert a reduced basis to another term order.
    ChangeOrder {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Comma-separated weight, e.g. "-2,4,-8"; omit for a classical target.
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        target_weight: Option<Weight>,
        #[arg(long, value_enum, default_value = "grevlex")]
        target_tiebreak: Tiebreak,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        /// Check the output against the input with the Macaulay oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Check that a document holds the reduced basis of another's ideal.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        source: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree_bound: u32,
    },
    /// Print the multiplication matrices of a reduced basis.
    Multmat {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tropical row echelon form of a matrix document.
    Echelon {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Reduce each pivot row by the rows below it first.
        #[arg(long)]
        stable: bool,
    },
    /// Precision-loss statistics on random systems over Q_p.
    Experiment {
        #[arg(long)]
        prime: u64,
        /// Degree tuple, repeatable: --degrees 2,2,2 --degrees 2,2,3
        #[arg(long, value_parser = parse_list::<u32>, required = true)]
        degrees: Vec<Vec<u32>>,
        #[arg(long, default_value_t = 50)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "trop-to-lex")]
        mode: Mode,
        #[arg(long, default_value_t = 200)]
        precision: u32,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        target_weight: Option<Weight>,
        /// Also run this mode on the same seeds and print loss ratios.
        #[arg(long, value_enum)]
        compare: Option<Mode>,
        /// CSV destination; the CSV goes to stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::ChangeOrder { input, output, target_weight, target_tiebreak, strategy, verify } => {
            commands::cmd_change_order(&ChangeOrderArgs {
                input,
                output,
                target_weight: target_weight.map(|w| w.0),
                target_tiebreak,
                strategy: strategy.into(),
                verify,
            })
        }
        Command::Verify { input, source, degree_bound } => commands::cmd_verify(&input, &source, degree_bound),
        Command::Multmat { input, output } => commands::cmd_multmat(&input, output.as_deref()),
        Command::Echelon { input, output, stable } => commands::cmd_echelon(&input, output.as_deref(), stable),
        Command::Experiment { prime, degrees, reps, seed, mode, precision, target_weight, compare, output } => {
            let mut cfg = ExperimentConfig::new(prime, degrees, reps, seed, mode);
            cfg.precision = precision;
            cfg.target_weight = target_weight.map(|w| w.0);
            commands::cmd_experiment(&cfg, output.as_deref(), compare).map(|_| ())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { commands::exit::USAGE } else { commands::exit::OK };
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code as u8)
        }
    }
}
