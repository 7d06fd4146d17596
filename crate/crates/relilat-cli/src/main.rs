use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use relilat_cli::specfile::SpecFile;
use relilat_cli::{commands, CliError};
use relilat_core::reliability::Formula;
use relilat_core::structure::MleForm;

#[derive(Parser)]
#[command(
    name = "relilat",
    version,
    about = "Reliability analysis of semicoherent systems from a spec file"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a spec file; with --emit-canonical, re-emit it normalized
    Check {
        spec: PathBuf,
        #[arg(long)]
        emit_canonical: bool,
    },
    /// Minimal path sets, one per line, 1-based components
    Paths {
        spec: PathBuf,
        /// For weighted systems: the time whose structure is reported
        #[arg(long)]
        at_time: Option<f64>,
    },
    /// Minimal cut sets, one per line, 1-based components
    Cuts {
        spec: PathBuf,
        #[arg(long)]
        at_time: Option<f64>,
    },
    /// Nonzero Mobius coefficients of the structure function
    Mobius {
        spec: PathBuf,
        #[arg(long)]
        at_time: Option<f64>,
    },
    /// Truth table of the dual structure as a 0/1 string
    Dual {
        spec: PathBuf,
        #[arg(long)]
        at_time: Option<f64>,
    },
    /// Reliability curve as CSV "t,R_S"
    Reliability {
        spec: PathBuf,
        /// Evaluation times as start:stop:step
        #[arg(long, conflicts_with = "times")]
        grid: Option<String>,
        /// Explicit comma-separated evaluation times
        #[arg(long, value_delimiter = ',')]
        times: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value = "auto")]
        formula: FormulaArg,
    },
    /// Mean time to failure and how it was computed
    Mttf {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        formula: FormulaArg,
    },
    /// System lifetime distribution as CSV "t,F"
    Dist {
        spec: PathBuf,
        #[arg(long, conflicts_with = "times")]
        grid: Option<String>,
        #[arg(long, value_delimiter = ',')]
        times: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value = "auto")]
        formula: FormulaArg,
    },
    /// Compare exact reliability against the Monte Carlo oracle
    Verify {
        spec: PathBuf,
        #[arg(long, conflicts_with = "times")]
        grid: Option<String>,
        #[arg(long, value_delimiter = ',')]
        times: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    Auto,
    Statevec,
    StatevecDual,
    MobiusSurvival,
    MobiusCdf,
    MlePrimal,
    MleDual,
    MlePrimalMobius,
    MleDualMobius,
    MleDnf,
    MleCnf,
    MlePivotal,
}

impl FormulaArg {
    fn to_formula(self) -> Formula {
        match self {
            FormulaArg::Auto => Formula::Auto,
            FormulaArg::Statevec => Formula::StateVector,
            FormulaArg::StatevecDual => Formula::StateVectorDual,
            FormulaArg::MobiusSurvival => Formula::MobiusSurvival,
            FormulaArg::MobiusCdf => Formula::MobiusCdf,
            FormulaArg::MlePrimal => Formula::IndependentMle(MleForm::Primal),
            FormulaArg::MleDual => Formula::IndependentMle(MleForm::Dual),
            FormulaArg::MlePrimalMobius => Formula::IndependentMle(MleForm::PrimalMobius),
            FormulaArg::MleDualMobius => Formula::IndependentMle(MleForm::DualMobius),
            FormulaArg::MleDnf => Formula::IndependentMle(MleForm::DisjunctiveNormal),
            FormulaArg::MleCnf => Formula::IndependentMle(MleForm::ConjunctiveNormal),
            FormulaArg::MlePivotal => Formula::IndependentMle(MleForm::Pivotal),
        }
    }
}

fn load(path: &Path) -> Result<SpecFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    SpecFile::parse(&text)
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Check { spec, emit_canonical } => commands::check(&load(&spec)?, emit_canonical),
        Command::Paths { spec, at_time } => commands::paths(&load(&spec)?, at_time),
        Command::Cuts { spec, at_time } => commands::cuts(&load(&spec)?, at_time),
        Command::Mobius { spec, at_time } => commands::mobius(&load(&spec)?, at_time),
        Command::Dual { spec, at_time } => commands::dual(&load(&spec)?, at_time),
        Command::Reliability { spec, grid, times, formula } => commands::reliability(
            &load(&spec)?,
            grid.as_deref(),
            times.as_deref(),
            formula.to_formula(),
        ),
        Command::Mttf { spec, formula } => commands::mttf(&load(&spec)?, formula.to_formula()),
        Command::Dist { spec, grid, times, formula } => commands::dist(
            &load(&spec)?,
            grid.as_deref(),
            times.as_deref(),
            formula.to_formula(),
        ),
        Command::Verify { spec, grid, times, seed, samples } => {
            commands::verify(&load(&spec)?, grid.as_deref(), times.as_deref(), seed, samples)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version go to stdout with success; real argument
            // errors are parse failures.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            if let CliError::Verification { output, .. } = &err {
                print!("{output}");
            }
            eprintln!("{}", err.diagnostic());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
