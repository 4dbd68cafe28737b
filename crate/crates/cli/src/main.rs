mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vosa_core::{HalfInt, Scalar};

use commands::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "vosa", version, about = "Exact verification suites for vertex operator superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Truncation depth (a half-integer such as 2 or 5/2).
    #[arg(long, global = true, env = "VOSA_DEPTH", default_value = "2", value_parser = parse_half)]
    depth: HalfInt,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct ModuleSource {
    /// Module descriptor JSON file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Central charge of a Neveu-Schwarz Verma module (used without --input).
    #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
    pub c: Option<Scalar>,
    /// Highest weight of a Neveu-Schwarz Verma module (used without --input).
    #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
    pub h: Option<Scalar>,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraLevel {
    /// Built-in algebra name or a structure-constant JSON file.
    #[arg(long, default_value = "sl2")]
    pub algebra: String,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub level: i64,
    /// Largest |m|, |n| of the mode brackets compared.
    #[arg(long, default_value_t = 2)]
    pub bound: i64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum System {
    Fermion,
    Sugawara,
    Super,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate structure constants.
    Validate {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Dimensions and dual Coxeter numbers of the simple algebras.
    Catalog {
        /// A label such as A3 or E8; without it the table by Cartan type is printed.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Gram matrices of every level up to the depth.
    Gram(ModuleSource),
    /// Null vectors of every level up to the depth.
    Nullvec(ModuleSource),
    /// Signature of the form on the Neveu-Schwarz Verma module of every level.
    Ghosts {
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        c: Scalar,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        h: Scalar,
    },
    /// Locality order and singular part of the product of two fields.
    Ope {
        /// JSON file `{"module": descriptor, "a": field, "b": field}`.
        #[arg(long)]
        input: PathBuf,
    },
    /// Compares brackets from the singular part with direct commutators.
    Brackets {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Sugawara construction on the affine vacuum module.
    Sugawara(AlgebraLevel),
    /// Superconformal structure on the affine and fermion vacuum module.
    SusyCheck(AlgebraLevel),
    /// The highest-weight module of the super construction.
    Module {
        #[command(flatten)]
        base: AlgebraLevel,
        #[arg(long, default_value = "0", value_parser = parse_half)]
        spin: HalfInt,
    },
    /// Central-extension cocycles of the Neveu-Schwarz algebra.
    Cocycle {
        /// Central charges for the odd-sector check.
        #[arg(long = "c", value_parser = parse_scalar, allow_hyphen_values = true, num_args = 1..)]
        charges: Vec<Scalar>,
        #[arg(long, default_value_t = 12)]
        up_to: usize,
    },
    /// The vertex operator superalgebra axioms, plus sampled associativity checks.
    Axioms {
        #[arg(long, value_enum, default_value_t = System::Fermion)]
        system: System,
        #[arg(long, default_value_t = 1)]
        colors: usize,
        #[arg(long, default_value = "sl2")]
        algebra: String,
        #[arg(long, default_value_t = 1)]
        level: i64,
        /// Number of random (a, b, v) triples for the associativity check.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

fn parse_half(text: &str) -> Result<HalfInt, String> {
    HalfInt::parse(text).map_err(|e| e.to_string())
}

fn parse_scalar(text: &str) -> Result<Scalar, String> {
    Scalar::parse_rational(text).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let depth = cli.depth;
    let needs_depth = !matches!(cli.command, Command::Validate { .. } | Command::Catalog { .. });
    if needs_depth && depth < HalfInt::from_twice(1) {
        return Err(CliError::Usage(format!("depth must be at least 1/2, got {depth}")));
    }
    match &cli.command {
        Command::Validate { input, algebra } => commands::validate(input.as_deref(), algebra.as_deref()),
        Command::Catalog { algebra } => commands::catalog(algebra.as_deref()),
        Command::Gram(src) => commands::gram(src, depth),
        Command::Nullvec(src) => commands::nullvec(src, depth),
        Command::Ghosts { c, h } => commands::ghosts(c, h, depth),
        Command::Ope { input } => commands::ope(input, depth),
        Command::Brackets { input, bound } => commands::brackets(input, depth, *bound),
        Command::Sugawara(args) => commands::sugawara(args, depth),
        Command::SusyCheck(args) => commands::susy_check(args, depth),
        Command::Module { base, spin } => commands::module(base, *spin, depth),
        Command::Cocycle { charges, up_to } => commands::cocycle(charges, *up_to, depth),
        Command::Axioms {
            system,
            colors,
            algebra,
            level,
            samples,
        } => commands::axioms(*system, *colors, algebra, *level, *samples, cli.seed, depth),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.report).expect("reports serialize")
                ),
                Format::Text => print!("{}", out.text),
            }
            eprintln!("{}", out.summary);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
