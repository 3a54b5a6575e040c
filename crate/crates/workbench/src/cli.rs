use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::params::RawParams;
use crate::verify::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(
    name = "bmw",
    version,
    about = "Build and analyze cyclotomic BMW algebras over exact fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build B_(r,n) (or its Ariki-Koike quotient) and report on it.
    Build(BuildArgs),
    /// Tabulate the index set of simple modules.
    Classify(ClassifyArgs),
    /// Radical and Wedderburn blocks of a dumped algebra.
    Analyze(AnalyzeArgs),
    /// Print the semi-admissibility degree d for a parameter set.
    Semiadmissible(SemiArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassifyMode {
    Affine,
    Cyclotomic,
}

const INLINE: [&str; 9] = [
    "field",
    "q",
    "rho",
    "r",
    "u",
    "admissible",
    "alpha_choice",
    "semi_degree",
    "omega",
];

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Parameter file of `key = value` lines; excludes the inline flags.
    #[arg(long, conflicts_with_all = INLINE)]
    pub params: Option<PathBuf>,
    /// `gfp:<prime>` or `q` [default: gfp:101]
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    /// Explicit rho; solved from admissibility when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
    /// Number of u parameters; checked against --u.
    #[arg(long)]
    pub r: Option<usize>,
    /// Comma-separated u_1, ..., u_r.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    #[arg(long)]
    pub admissible: bool,
    /// Which of the two allowed alpha values fixes rho (0 or 1).
    #[arg(long)]
    pub alpha_choice: Option<usize>,
    /// Semi-admissible with this degree d.
    #[arg(long)]
    pub semi_degree: Option<usize>,
    /// Comma-separated omega_1, ..., omega_(r-1) (needs --rho).
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
}

impl ParamArgs {
    pub fn raw(&self) -> RawParams {
        RawParams {
            field: self.field.clone(),
            q: self.q.clone(),
            rho: self.rho.clone(),
            r: self.r,
            u: self.u.clone(),
            admissible: self.admissible,
            alpha_choice: self.alpha_choice,
            semi_degree: self.semi_degree,
            omega: self.omega.clone(),
        }
    }

    pub fn is_given(&self) -> bool {
        self.params.is_some() || !self.raw().is_empty()
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub params: ParamArgs,
    /// bmw or ariki-koike
    #[arg(long, default_value = "bmw")]
    pub variant: String,
    /// Overlap degree cap for completion [default: 4n + 2r]
    #[arg(long, env = "BMW_DEGREE_CAP")]
    pub degree_cap: Option<usize>,
    /// Write the canonical algebra dump here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, value_enum)]
    pub mode: ClassifyMode,
    #[arg(long)]
    pub n: usize,
    /// Order of q^2: a positive integer or `inf`.
    #[arg(long)]
    pub e: Option<String>,
    /// All omega_a vanish (drops f = n/2 for even n).
    #[arg(long)]
    pub omega_zero: bool,
    /// Residue window `a..b`, required when e is infinite.
    #[arg(long)]
    pub window: Option<String>,
    /// Comma-separated charges s_j with u_j = q^(2 s_j).
    #[arg(long, allow_hyphen_values = true)]
    pub multicharge: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Dump written by `build --out`.
    pub dump: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Fail when the algebra is not split over its field.
    #[arg(long)]
    pub strict: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SemiArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, env = "BMW_DEGREE_CAP")]
    pub degree_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite to run; only `acceptance` exists.
    #[arg(default_value = "acceptance")]
    pub suite: String,
    /// Criteria to run, by id or name (dims, semi, omega, truncation,
    /// ideal, simples, functor, combinatorics, properties).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Override rho on every admissible instance (negative control).
    #[arg(long)]
    pub rho: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Criteria run concurrently on up to this many threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
