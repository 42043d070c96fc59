use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nmi", version, about = "Normalized mutual information for classifier evaluation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full per-model report: indexes, case, and NI by both computation paths
    Report(ReportArgs),
    /// NI only
    Ni(ReportArgs),
    /// Which of the nine zero-pattern cases a matrix falls in
    Case(ReportArgs),
    /// Write relation-map datasets (CSV + manifest)
    Map(MapArgs),
    /// Rank models by NI and accuracy
    Rank(RankArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    CsvPairs,
    JsonMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapName {
    Acc,
    Pre,
    Rec,
    PrRegion,
    PrSurface,
    FrSurface,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ideal,
    Actual,
}

/// Where the models come from: files, or counts on the command line.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input file; repeat for several models
    #[arg(long, short)]
    pub input: Vec<PathBuf>,
    /// Input file format; inferred from the extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    /// Positive class label for csv-pairs input
    #[arg(long, default_value = "1")]
    pub positive_label: String,
    /// Negative class label for csv-pairs input; inferred when omitted
    #[arg(long)]
    pub negative_label: Option<String>,
    /// The CSV input starts with a header row
    #[arg(long)]
    pub header: bool,
    #[arg(long, conflicts_with = "input", requires_all = ["fp", "tn", "fn_"])]
    pub tp: Option<f64>,
    #[arg(long, requires = "tp")]
    pub fp: Option<f64>,
    #[arg(long, requires = "tp")]
    pub tn: Option<f64>,
    #[arg(long = "fn", id = "fn_", requires = "tp")]
    pub fn_: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, short, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Decimal places for indexes and NI
    #[arg(long, default_value_t = 4)]
    pub decimals: usize,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, short, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    #[arg(long, default_value_t = 4)]
    pub decimals: usize,
    /// Apply the three selection items to the raw models, without
    /// complementing models whose accuracy is below 0.5
    #[arg(long)]
    pub literal_def4: bool,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(value_enum)]
    pub map: MapName,
    /// Size of class 1 (positive)
    #[arg(long)]
    pub w1: f64,
    /// Size of class 2 (negative)
    #[arg(long)]
    pub w2: f64,
    /// Exchange w1 and w2 when w1 < w2 instead of rejecting them
    #[arg(long)]
    pub swap_classes: bool,
    /// Samples per boundary curve
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    #[arg(long, default_value_t = 201)]
    pub nx: usize,
    #[arg(long, default_value_t = 201)]
    pub ny: usize,
    /// Surface mode for pr-surface
    #[arg(long, value_enum, default_value_t = Mode::Actual)]
    pub mode: Mode,
    /// Largest w1 + w2 for which integer matrices are enumerated
    #[arg(long, default_value_t = 200)]
    pub cap: u64,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Run single-threaded
    #[arg(long)]
    pub sequential: bool,
}
