use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use twistmat::algebra::Field;

#[derive(Parser, Debug)]
#[command(name = "twistmat", version, about = "Graded twisting maps of K[x] and K[y] as exact band matrices")]
pub struct Cli {
    /// Coefficient field: `rational` or `gf:p`.
    #[arg(long, global = true)]
    pub field: Option<Field>,
    /// Rows to build (default 24), or the identity index to verify up to.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Also write the JSON result here.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a matrix from family parameters.
    Build(BuildArgs),
    /// Run oracles on a matrix file.
    Verify(VerifyArgs),
    /// Identify the family of a matrix file.
    Classify(ClassifyArgs),
    /// Quasi-balanced sequences.
    Seq(SeqArgs),
    /// Search for roots of Q_n or R_k.
    Roots(RootsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    Ore,
    Generic,
    Particular,
    Anda,
    Bnl,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["variant", "params"])))]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// FamilyParams JSON file.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Sequence for `bnl`, comma separated.
    #[arg(long = "L", value_delimiter = ',')]
    pub l: Vec<usize>,
    /// Build `bnl` without checking quasi-balance.
    #[arg(long)]
    pub force: bool,
    /// Rows shown in the summary.
    #[arg(long, default_value_t = 4)]
    pub show: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckArg {
    Fundamental,
    Gamma,
    Mtilde,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Matrix JSON file.
    pub matrix: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "fundamental")]
    pub check: Vec<CheckArg>,
    /// `a` for the mtilde check; read from the matrix if omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// `L` for the mtilde check; read from the matrix if omitted.
    #[arg(long = "L", value_delimiter = ',')]
    pub l: Vec<usize>,
    #[arg(long, default_value_t = 6)]
    pub max_r: usize,
    #[arg(long, default_value_t = 6)]
    pub max_i: usize,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Matrix JSON file.
    pub matrix: PathBuf,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["count", "enumerate", "extend", "witness", "check", "generate"])))]
pub struct SeqArgs {
    #[arg(long)]
    pub n: usize,
    /// CSV of `length,count` for lengths up to `--max-len`.
    #[arg(long)]
    pub count: bool,
    /// All quasi-balanced prefixes of length `--len`.
    #[arg(long)]
    pub enumerate: bool,
    /// Admissible next terms of a prefix.
    #[arg(long, value_delimiter = ',')]
    pub extend: Option<Vec<usize>>,
    /// Failure witness of a sequence that is not quasi-balanced.
    #[arg(long, value_delimiter = ',')]
    pub witness: Option<Vec<usize>>,
    /// Whether a sequence is quasi-balanced.
    #[arg(long, value_delimiter = ',')]
    pub check: Option<Vec<usize>>,
    /// Generate a prefix of length `--len` with `--policy`.
    #[arg(long)]
    pub generate: bool,
    #[arg(long, default_value_t = 10)]
    pub max_len: usize,
    #[arg(long, default_value_t = 6)]
    pub len: usize,
    /// `all-n`, `n-plus-one` or `random:SEED`.
    #[arg(long, default_value = "all-n")]
    pub policy: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootFamily {
    Q,
    R,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[arg(value_enum)]
    pub family: RootFamily,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long, default_value_t = twistmat::algebra::DEFAULT_BOUND)]
    pub bound: usize,
}
