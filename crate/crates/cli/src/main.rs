use std::path::PathBuf;
use std::process::ExitCode;

use bodycad_cli::{
    cmd_analyze, cmd_matrix, cmd_pebble, cmd_sparsity, parse_counts, AnalyzeOptions, CliError, MatrixFormat, Outcome,
    PebbleMode, SparsityMode,
};
use bodycad_core::rigidity::Mode;
use clap::{Parser, Subcommand, ValueEnum};

/// Infinitesimal rigidity of body-and-cad frameworks and nested sparsity of
/// their graphs.
#[derive(Parser)]
#[command(name = "bodycad", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, degrees of freedom, redundant rows and flex basis of a framework.
    /// Exits 0 when rigid, 3 when flexible, 2 on invalid input.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Rational)]
        mode: ModeArg,
        /// Relative zero threshold for float mode.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Re-run the rank after this many random rigid motions of the geometry.
        #[arg(long, value_name = "TRIALS")]
        perturb_audit: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Dump the rigidity matrix with each row's source constraint and class.
    Matrix {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Nested (k,l)-sparsity of a colored multigraph or of a framework's
    /// primitive graph. Decision exits 0 when sparse, 3 otherwise.
    Sparsity {
        file: PathBuf,
        /// `k1,l1,k2,l2`, or `k,l` for equal inner and outer counts.
        #[arg(long, default_value = "6,6,3,3")]
        counts: String,
        #[arg(long, value_enum, default_value_t = SparsityArg::Decision)]
        mode: SparsityArg,
        /// Read a framework file and use its primitive cad graph.
        #[arg(long)]
        from_framework: bool,
    },
    /// Plain (k,l) pebble game. Decision exits 0 when sparse, 3 otherwise.
    Pebble {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value_t = PebbleArg::Decision)]
        mode: PebbleArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Rational,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SparsityArg {
    Decision,
    Extract,
    Components,
}

#[derive(Clone, Copy, ValueEnum)]
enum PebbleArg {
    Decision,
    Components,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Analyze {
            file,
            mode,
            tolerance,
            perturb_audit,
            seed,
        } => {
            if !(tolerance > 0.0 && tolerance.is_finite()) {
                return Err(CliError::Usage(format!("tolerance must be positive, got {tolerance}")));
            }
            let mode = match mode {
                ModeArg::Rational => Mode::Rational,
                ModeArg::Float => Mode::Float { tolerance },
            };
            let opts = AnalyzeOptions {
                mode,
                perturb_trials: perturb_audit,
                seed,
            };
            cmd_analyze(&file, &opts)
        }
        Command::Matrix { file, format } => {
            let format = match format {
                FormatArg::Csv => MatrixFormat::Csv,
                FormatArg::Json => MatrixFormat::Json,
            };
            cmd_matrix(&file, format)
        }
        Command::Sparsity {
            file,
            counts,
            mode,
            from_framework,
        } => {
            let mode = match mode {
                SparsityArg::Decision => SparsityMode::Decision,
                SparsityArg::Extract => SparsityMode::Extract,
                SparsityArg::Components => SparsityMode::Components,
            };
            cmd_sparsity(&file, from_framework, parse_counts(&counts)?, mode)
        }
        Command::Pebble { file, k, l, mode } => {
            let mode = match mode {
                PebbleArg::Decision => PebbleMode::Decision,
                PebbleArg::Components => PebbleMode::Components,
            };
            cmd_pebble(&file, k, l, mode)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
