//! `stpnet`: compile logical networks and transition systems, then analyze
//! cycles, reachability, quotients and output robustness.

mod input;
mod report;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit status 1.
const ANALYSIS_FAILURE: u8 = 1;
/// Exit status 2.
const CONFIG_FAILURE: u8 = 2;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable input, parse failure or invalid option combination.
    Config(String),
    /// The analysis itself failed or hit a limit.
    Analysis(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => CONFIG_FAILURE,
            CliError::Analysis(_) => ANALYSIS_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Analysis(m) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Undistinguished,
    Distinguished,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    /// The transition system itself.
    Ts,
    /// Autonomous system with states `x` and edges from any input.
    Undistinguished,
    /// Autonomous system with states `(u, x)`.
    Distinguished,
    /// Disturbance folded into the transition relation.
    Folded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DotView {
    /// States and transitions, inputs on edges, outputs on nodes.
    Ts,
    /// Strongly connected components of the undistinguished system.
    Condensation,
    /// The output-based quotient system.
    Quotient,
}

#[derive(Debug, Parser)]
#[command(name = "stpnet", version, about = "Algebraic analysis of logical networks and finite transition systems")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DisturbedInputs {
    /// A .bn network with a `disturbance` block and `nominal` lines.
    #[arg(conflicts_with_all = ["nominal", "disturbed"])]
    file: Option<PathBuf>,
    /// Disturbance-free model.
    #[arg(long, requires = "disturbed")]
    nominal: Option<PathBuf>,
    /// Disturbed model.
    #[arg(long, requires = "nominal")]
    disturbed: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile a model to its algebraic state-space representation.
    Assr { file: PathBuf },
    /// Count cycles and enumerate fixed points and simple cycles.
    Attractors {
        file: PathBuf,
        /// Largest cycle length counted (default: n for deterministic systems).
        #[arg(long)]
        smax: Option<usize>,
        /// How control inputs are removed.
        #[arg(long, value_enum, default_value = "undistinguished")]
        mode: Mode,
        /// Only enumerate simple cycles up to this length.
        #[arg(long)]
        max_len: Option<usize>,
        /// Limit on enumerated simple cycles.
        #[arg(long, env = "STPNET_CAP")]
        cap: Option<u64>,
        /// Report a truncated enumeration instead of failing at the cap.
        #[arg(long)]
        truncate: bool,
    },
    /// Convert between transition-system views.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ts")]
        to: ConvertTarget,
    },
    /// Reachability matrix, with an optional invariant-set partition check.
    Reach {
        file: PathBuf,
        /// A candidate attractor set, e.g. `--set 1,3`; repeat for a partition.
        #[arg(long = "set")]
        sets: Vec<String>,
        #[arg(long, value_enum, default_value = "undistinguished")]
        mode: Mode,
    },
    /// Output-based quotient system.
    Quotient { file: PathBuf },
    /// Output robustness of a disturbed system.
    Robust {
        #[command(flatten)]
        inputs: DisturbedInputs,
    },
    /// Exhaustive search for state feedbacks that make the system output robust.
    SearchFeedback {
        #[command(flatten)]
        inputs: DisturbedInputs,
        /// Limit on examined candidates.
        #[arg(long, env = "STPNET_CAP")]
        cap: Option<u64>,
        /// Examine the first `cap` candidates instead of failing.
        #[arg(long)]
        truncate: bool,
    },
    /// Graphviz rendering of a model.
    ExportDot {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ts")]
        view: DotView,
    },
    /// Randomized consistency checks of the analysis routines.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random systems per check.
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let f = cli.format;
    match cli.command {
        Command::Assr { file } => report::assr(&input::load(&file)?, f),
        Command::Attractors {
            file,
            smax,
            mode,
            max_len,
            cap,
            truncate,
        } => report::attractors(&input::load(&file)?, f, smax, mode, max_len, cap, truncate),
        Command::Convert { file, to } => report::convert(&input::load(&file)?, f, to),
        Command::Reach { file, sets, mode } => report::reach(&input::load(&file)?, f, &sets, mode),
        Command::Quotient { file } => report::quotient_report(&input::load(&file)?, f),
        Command::Robust { inputs } => {
            let (name, dm) =
                input::load_disturbed(inputs.file.as_deref(), inputs.nominal.as_deref(), inputs.disturbed.as_deref())?;
            report::robust(&name, &dm, f)
        }
        Command::SearchFeedback { inputs, cap, truncate } => {
            let (name, dm) =
                input::load_disturbed(inputs.file.as_deref(), inputs.nominal.as_deref(), inputs.disturbed.as_deref())?;
            report::search_feedback(&name, &dm, f, cap, truncate)
        }
        Command::ExportDot { file, view } => report::export_dot(&input::load(&file)?, view),
        Command::Selftest { seed, trials } => selftest::run(seed, trials, f),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { CONFIG_FAILURE } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
