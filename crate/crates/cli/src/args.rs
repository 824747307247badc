use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "dagconvex", version, about = "Convex sets in acyclic digraphs")]
pub struct Cli {
    /// Override the order caps of both enumerators.
    #[arg(long, global = true, env = "DAGCONVEX_MAX_N")]
    pub max_n: Option<usize>,

    /// Seed for random families whose spec omits one.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a family member as an edge list.
    Gen(GenArgs),
    /// Count sets and report size statistics.
    Stats(StatsArgs),
    /// Check the per-size lower bound and the non-cut endpoint count.
    Verify(VerifyArgs),
    /// Test whether a vertex set is convex.
    CheckConvex(SetArgs),
    /// Print the convex hull of a vertex set.
    Hull(SetArgs),
    /// Tabulate average set sizes across a family.
    Trend(TrendArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Dt,
    Gi,
    Path,
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: FamilyKind,
    /// t for dt, i for gi, n for path and random.
    pub param: usize,
    /// Arc probability for random.
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge-list or DOT file.
    pub file: Option<PathBuf>,
    /// Generated input: dt:T, gi:I, path:N or random:N:P[:SEED].
    #[arg(long, conflicts_with = "file")]
    pub family: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Co,
    Cc,
    Both,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct FormatArgs {
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

impl FormatArgs {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Human
        }
    }
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = ClassArg::Both)]
    pub class: ClassArg,
    #[command(flatten)]
    pub format: FormatArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Emit the per-size table as CSV.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct SetArgs {
    pub file: PathBuf,
    /// Comma-separated vertex labels.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub set: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrendFamily {
    Dt,
    Gi,
}

#[derive(Debug, Args)]
pub struct TrendArgs {
    pub family: TrendFamily,
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub params: Vec<usize>,
    /// Skip the convex-set columns (their subset scan is exponential in n).
    #[arg(long)]
    pub cc_only: bool,
    #[command(flatten)]
    pub format: FormatArgs,
}
