use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "angulator",
    version,
    about = "Diagonal models of higher cluster categories of type A"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the indecomposable objects of the model.
    Objects(Common),
    /// Print nc(S) for a set S.
    Nc {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        set: SetArg,
    },
    /// Enumerate all weak cotorsion pairs.
    Pairs {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = StrategyArg::NextClosure)]
        strategy: StrategyArg,
    },
    /// Classify S as a candidate self-paired weak cotorsion pair (S, S).
    Classify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        set: SetArg,
    },
    /// Mutate S with respect to a rigid set D (D = 0 when omitted).
    Mutate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long = "D", value_name = "SET")]
        dset: Option<String>,
        #[command(flatten)]
        set: SetArg,
    },
    /// Describe the subfactor nc(D)/D of a polygon model.
    Subfactor {
        #[command(flatten)]
        common: Common,
        #[arg(long = "D", value_name = "SET")]
        dset: String,
    },
    /// Run an exhaustive check and report a counterexample if one exists.
    #[command(subcommand)]
    Check(Check),
    /// Emit the Hom or Ext quiver as Graphviz DOT.
    Quiver {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = KindArg::Hom)]
        kind: KindArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// (X, Y) weak cotorsion pair iff Y = nc X iff X = nc Y, symmetric in X and Y.
    #[command(name = "thm-3-14")]
    PairEquivalence(Common),
    /// Pairs with core containing D biject with subfactor pairs.
    #[command(name = "thm-4-11")]
    SubfactorBijection {
        #[command(flatten)]
        common: Common,
        #[arg(long = "D", value_name = "SET")]
        dset: String,
    },
    /// Mutation preserves weak cotorsion pairs and their cores.
    #[command(name = "thm-4-13")]
    MutationClosure {
        #[command(flatten)]
        common: Common,
        /// Fixed D; when omitted every subset of each core is tried.
        #[arg(long = "D", value_name = "SET")]
        dset: Option<String>,
    },
    /// Forward and backward mutation are mutually inverse.
    #[command(name = "prop-4-12")]
    MutationInverse {
        #[command(flatten)]
        common: Common,
        #[arg(long = "D", value_name = "SET")]
        dset: String,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Exactly one of `--n/--d`, `--fixture`, `--model-file`.
#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub model_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SetArg {
    /// Comma-separated diagonals, or `-` to read one set per line from stdin.
    #[arg(long, value_name = "SET", allow_hyphen_values = true)]
    pub set: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    BruteForce,
    NextClosure,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DirectionArg {
    Fwd,
    Bwd,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Hom,
    Ext,
}
