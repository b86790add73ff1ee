use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "cstar",
    version,
    about = "Certify and iterate maps on C*-algebra valued metric spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a contractive condition on the sampled pairs and print the margin table.
    Certify(CertifyArgs),
    /// Picard iteration of T from the first start.
    Solve(RunArgs),
    /// Alternating T/S iteration (or T then S∘T with --composed) from the first start.
    CommonSolve(CommonArgs),
    /// Orbital continuity of T (and S when present) from every start.
    Orbital(RunArgs),
    /// List or run the pinned worked examples.
    Gallery(GalleryArgs),
    /// Check the metric axioms on the domain sample.
    Axioms(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Eq1,
    Type1,
    Type2,
    Kannan,
    Common,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Scenario file.
    #[arg(long, value_name = "PATH")]
    pub scenario: Option<PathBuf>,
    /// Gallery entry id, e.g. example_3_4.
    #[arg(long, value_name = "ID")]
    pub gallery: Option<String>,
}

/// Overrides of the scenario's run settings.
#[derive(Debug, Clone, Default, Args)]
pub struct Tuning {
    #[arg(long, value_name = "N")]
    pub max_power: Option<u32>,
    #[arg(long, value_name = "N")]
    pub max_iter: Option<usize>,
    /// Positivity and equality slack.
    #[arg(long, value_name = "E")]
    pub tol: Option<f64>,
    /// Grid step for interval domains.
    #[arg(long, value_name = "H")]
    pub sample_step: Option<f64>,
    /// Comma-separated starting points.
    #[arg(long, value_name = "LIST", value_delimiter = ',', allow_negative_numbers = true)]
    pub starts: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub target: Target,
    #[command(flatten)]
    pub tuning: Tuning,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Condition to check; defaults to the scenario's gauge form.
    #[arg(long, value_enum)]
    pub form: Option<Form>,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Iterate T and S∘T instead of alternating T and S.
    #[arg(long)]
    pub composed: bool,
}

#[derive(Debug, Clone, Args)]
#[group(id = "which", required = true, multiple = false, args = ["id", "all", "list"])]
pub struct GalleryArgs {
    /// Entry to run.
    pub id: Option<String>,
    /// Run every entry.
    #[arg(long)]
    pub all: bool,
    /// Print the entries without running them.
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub output: Output,
}
