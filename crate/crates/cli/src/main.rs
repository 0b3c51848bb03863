//! `zpg`: cohomology, Yakovlev diagrams and the lattice constructions on the
//! command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "zpg", version, about = "Z_p[C_{p^n}] lattices, Tate cohomology and Yakovlev diagrams")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// The prime. Module files carry their own; a disagreeing flag is an error.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// The exponent, so the group has order p^n.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Decision precision N (digits mod p^N).
    #[arg(long, global = true, env = "ZPG_PRECISION")]
    pub precision: Option<u32>,
    /// Extra digits required above every pivot valuation.
    #[arg(long, global = true)]
    pub guard: Option<u32>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random samples per isomorphism search before giving up as undecided.
    #[arg(long = "max-samples", global = true)]
    pub max_samples: Option<usize>,
    /// Coefficient bound for exhaustive enumeration.
    #[arg(long = "enum-bound", global = true)]
    pub enum_bound: Option<u32>,
    /// Largest free padding rank tried in stable isomorphism checks.
    #[arg(long = "max-free-rank", global = true)]
    pub max_free_rank: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// construct: where to write the produced file (a directory for lemma2).
    /// Other commands: write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ĥ^0 and Ĥ^1 of a module over every subgroup.
    Cohomology {
        module: PathBuf,
        /// Also print restriction and corestriction matrices.
        #[arg(long)]
        maps: bool,
    },
    /// The diagram Δ(M) of a module, with its axioms checked.
    Delta { module: PathBuf },
    /// Compares Δ(M) and Δ(M') up to isomorphism.
    DeltaCompare { first: PathBuf, second: PathBuf },
    #[command(subcommand)]
    Construct(Construct),
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// The splitting module of an extension file.
    SplitModule {
        #[arg(long)]
        extension: PathBuf,
    },
    /// J_e = the ideal generated by p^e and σ - 1.
    JModule {
        #[arg(long)]
        e: u32,
    },
    /// Runs the A, B construction on a lattice with witnesses.
    Lemma2 {
        #[arg(long)]
        input: PathBuf,
    },
    /// The extension class of A -> B -> I read off a section.
    Cocycle {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Cohomology, resolution and distinctness of the J_e.
    Lemma3 {
        #[arg(long = "e-max")]
        e_max: Option<u32>,
    },
    /// Invariants of the augmentation ideal against the quotient's ideal.
    Prop4 {
        #[arg(long = "unit-rank", default_value_t = 1)]
        unit_rank: usize,
    },
    /// Predicted unit structure for cyclic torsion.
    Prop5 {
        /// Number of cyclic torsion summands when a single --e is given.
        #[arg(long)]
        r: Option<usize>,
        /// Exponents of the torsion summands.
        #[arg(long, num_args = 1.., required = true)]
        e: Vec<u32>,
        #[arg(long = "unit-rank", default_value_t = 1)]
        unit_rank: usize,
    },
    /// The full chain on a lattice with witnesses, or on the built-in battery.
    Theorem1 {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Diagram axioms on a diagram file or on random modules.
    Axioms {
        #[arg(long)]
        diagram: Option<PathBuf>,
        #[arg(long, default_value_t = 25)]
        count: usize,
    },
    /// Soundness pairs and the negative controls.
    Yakovlev,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.global.p == Some(2) {
        eprintln!("warning: p = 2 is outside the tested range; results are unverified");
    }
    let args: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli.global, &cli.command, &args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            if let Some(hint) = e.hint {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(1)
        }
    }
}
