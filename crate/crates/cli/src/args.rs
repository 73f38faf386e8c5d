use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "nzflow",
    version,
    about = "Construct, verify, optimise and draw nowhere-zero vector flows"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a flow file against a graph.
    Verify(VerifyArgs),
    /// Print the odd-girth lower bound on the flow number.
    Bound(BoundArgs),
    /// Build a flow by an explicit construction.
    Construct(ConstructArgs),
    /// Search for an oriented cycle double cover with k cycles.
    SearchCdc(SearchCdcArgs),
    /// Minimise the flow strength by multi-start descent.
    Minimize(MinimizeArgs),
    /// Draw a two-dimensional flow on a cubic graph as triangles.
    Triangulate(TriangulateArgs),
    /// Write a named graph.
    Gen(GenArgs),
    /// Rerun a reference experiment with pinned seeds.
    Repro(ReproArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormatArg {
    Graph6,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    /// Built-in name (petersen, k4, k33, j5, pdelta, cube, wheel:N, prism:N,
    /// complete:N, flower:K) or a file path.
    #[arg(long)]
    pub graph: String,
    /// File format; guessed from the contents when omitted.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Graph to check against; defaults to the graph stored in the flow file.
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long)]
    pub flow: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Also require strength at most this value.
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BoundArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    /// Integer pair `(f2, f3)` read as a planar flow.
    Seymour,
    /// Cube roots of unity on a bipartite cubic graph.
    Bipartite,
    /// Regular k-gon assigned to an oriented k-cycle double cover.
    Cdc,
    /// Exact flow on the Petersen graph from its triangulation.
    Petersen,
    /// Odd prism flow copied from a wheel flow given with --flow.
    Prism,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: ConstructionKind,
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long, default_value_t = nzflow_core::cdc::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Wheel flow for the prism construction.
    #[arg(long)]
    pub flow: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SearchCdcArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = nzflow_core::cdc::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MinimizeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 64)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Extra warm start flow files.
    #[arg(long = "warm-start")]
    pub warm_start: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Attached,
    Exploded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmitArg {
    Svg,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TriangulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Flow file; when omitted a flow is built (Petersen figure, bipartite
    /// unit flow, or a short optimisation run).
    #[arg(long)]
    pub flow: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Attached)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = EmitArg::Svg)]
    pub emit: EmitArg,
    /// Validate against this strength instead of the flow's own.
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 16)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    /// wheel, prism, complete, flower, petersen, k4, k33, j5, pdelta or cube.
    pub family: String,
    /// Size parameter for wheel, prism, complete and flower.
    pub size: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReproTarget {
    K4,
    K33,
    Wheels,
    Prisms,
    Petersen,
    J5,
    Pdelta,
    #[value(name = "tau2-check")]
    Tau2Check,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReproArgs {
    #[arg(value_enum)]
    pub target: ReproTarget,
    /// Stop after this many seconds and write what has finished.
    #[arg(long)]
    pub timeout: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
