//! `dgfree`: exact computations with DG free algebras on degree-one generators.
//!
//! Exit codes: 0 success, 1 negative or undecided verdict, 2 input error.

mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "dgfree", version, about = "Exact computations with DG free algebras on degree-one generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Test the crisscross condition and cross-check it against d^2 = 0.
    Check { tuple: PathBuf },
    /// Classify a two-generator tuple and print the certified witness chain.
    Classify { tuple: PathBuf },
    /// Cohomology dimensions, ranks and representatives by degree.
    Cohomology {
        tuple: PathBuf,
        #[arg(long, env = "DGFREE_MAX_DEGREE", default_value_t = 8, allow_negative_numbers = true)]
        max_degree: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decide isomorphism of two tuples, checking a witness when one is given.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Free DG modules given as JSON.
    Module {
        #[command(subcommand)]
        command: ModuleCommand,
    },
    /// Instances of the two-generator case families.
    Families {
        /// A case such as 13 or 14.3; all cases when omitted.
        #[arg(long)]
        case: Option<String>,
        /// Sample values for the free parameters, e.g. --values=-1,1/2,3.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// The defining tuple of a class label such as B7 or "B(2,3)".
    Canonical { label: String },
    /// A reproducible pseudorandom integer tuple.
    Random {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        n: u8,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        #[arg(long)]
        seed: u64,
    },
    /// Run the verification suite against the golden results.
    VerifyPaper {
        /// Run only these criteria (comma separated names).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Read golden files from this directory instead of the built-in copies.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Check degrees and d^2 = 0.
    Validate { module: PathBuf },
    /// Module cohomology and the cohomology of Hom into the algebra.
    Cohomology {
        module: PathBuf,
        #[arg(long, env = "DGFREE_MAX_DEGREE", default_value_t = 8, allow_negative_numbers = true)]
        max_degree: i64,
    },
    /// The algebra of degree-zero cocycle endomorphisms.
    Endo { module: PathBuf },
}

fn run(cli: Cli) -> anyhow::Result<commands::Reply> {
    match cli.command {
        Command::Check { tuple } => commands::check(&tuple),
        Command::Classify { tuple } => commands::classify(&tuple),
        Command::Cohomology { tuple, max_degree, format } => commands::cohomology(&tuple, max_degree, format),
        Command::Iso { first, second, witness } => commands::iso(&first, &second, witness.as_deref()),
        Command::Module { command } => match command {
            ModuleCommand::Validate { module } => commands::module_validate(&module),
            ModuleCommand::Cohomology { module, max_degree } => commands::module_cohomology(&module, max_degree),
            ModuleCommand::Endo { module } => commands::module_endo(&module),
        },
        Command::Families { case, values } => commands::families(case.as_deref(), &values),
        Command::Canonical { label } => commands::canonical(&label),
        Command::Random { n, bound, seed } => commands::random(n as usize, bound, seed),
        Command::VerifyPaper { only, golden_dir, seed } => verify::run(&only, golden_dir, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(reply) => {
            print!("{}", reply.body);
            ExitCode::from(reply.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
