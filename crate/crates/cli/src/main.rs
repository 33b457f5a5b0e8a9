mod codec;
mod commands;
mod error;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "persdgm",
    version,
    about = "Generalized persistence diagrams of constructible persistence modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Type A or type B diagram of a filtration or a module file.
    Diagram(DiagramArgs),
    /// Erosion distance between two diagram files.
    Erosion(ErosionArgs),
    /// Perturbation trials checking continuity and semicontinuity.
    Stability(StabilityArgs),
    /// Re-emit a diagram, module or filtration in another format.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CategoryArg {
    Finset,
    Vect,
    Ab,
    Finab,
    Repn,
}

impl CategoryArg {
    pub fn name(self) -> &'static str {
        match self {
            CategoryArg::Finset => "finset",
            CategoryArg::Vect => "vect",
            CategoryArg::Ab => "ab",
            CategoryArg::Finab => "finab",
            CategoryArg::Repn => "repn",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
    Tsv,
}

/// Where a persistence module comes from.
#[derive(Debug, Args)]
pub struct ModuleArgs {
    /// Filtration (`v0 v1 … : value` lines) or module JSON.
    #[arg(long)]
    pub input: PathBuf,
    /// Category of the module; derived from `--coeff` for filtrations.
    #[arg(long, value_enum)]
    pub category: Option<CategoryArg>,
    /// Homology coefficients: `Z`, `Q`, `Fp:<p>` or `Zm:<m>`.
    #[arg(long)]
    pub coeff: Option<String>,
    /// Homology degree.
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    #[arg(long = "type", value_enum, ignore_case = true, default_value = "B")]
    pub kind: Kind,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ErosionArgs {
    /// The two diagram files, as `--input a.json --input b.json`.
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    /// Perturbation size, a rational such as `1/8`.
    #[arg(long)]
    pub epsilon: String,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Diagram(a) => commands::diagram(&a),
        Command::Erosion(a) => commands::erosion(&a),
        Command::Stability(a) => commands::stability(&a),
        Command::Convert(a) => commands::convert(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
