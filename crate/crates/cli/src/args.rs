use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "starpart", version, about = "Exact and approximate star partitions of graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance and print or write the solution.
    Solve(SolveArgs),
    /// Check a solution against an instance.
    Verify(VerifyArgs),
    /// Transform an instance into one of a related problem.
    Reduce(ReduceArgs),
    /// Map a solution of a reduced instance back to the original.
    Pullback(PullbackArgs),
    /// LP-rounding approximation for the weighted problems.
    Approx(ApproxArgs),
    /// Generate an instance.
    Gen(GenArgs),
    /// Time the exact solvers against each other on growing instances.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Dfs,
    Flow,
    /// Exhaustive search; small instances only.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    /// Maximum number of distinct colors at a node.
    Star,
    /// Maximum indegree.
    Ind,
    /// Maximum weighted indegree.
    Wind,
    /// Maximum weighted star value.
    Wstar,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value = "dfs")]
    pub algo: Algo,
    #[arg(long, value_enum, default_value = "star")]
    pub objective: ObjectiveArg,
    /// Write the solution here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    pub solution: PathBuf,
    #[arg(long, value_enum, default_value = "star")]
    pub objective: ObjectiveArg,
    #[arg(long)]
    pub bound: Option<u64>,
    /// Print the per-node counts.
    #[arg(long, short)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReductionArg {
    /// Indegree instance to star instance via pendant nodes.
    Ind2star,
    /// Weighted indegree to weighted star via gadgets; needs `--k`.
    Wind2wstar,
    /// Bin packing to weighted indegree.
    Bp2wind,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub kind: ReductionArg,
    pub input: PathBuf,
    /// Indegree bound for `wind2wstar`.
    #[arg(long)]
    pub k: Option<u64>,
    /// Reduced instance; the map is written to `<out>.map`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PullbackArgs {
    /// Solution of the reduced instance.
    pub solution: PathBuf,
    /// Sidecar written by `reduce`.
    #[arg(long)]
    pub map: PathBuf,
    /// The instance that was reduced.
    #[arg(long)]
    pub original: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApproxObjective {
    Wind,
    Wstar,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value = "wind")]
    pub objective: ApproxObjective,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Knn,
    Path,
    Cycle,
    Star,
    Pseudoforest,
    Random,
    Hyper,
    Multi,
    Selfloop,
    DfsExample,
    FlowExample,
    FlowInfeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CapsArg {
    Default,
    Uniform,
    Random,
    Positive,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Node count (side size for `knn`, leaf count for `star`).
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Edge count for the random families; defaults to `2n`, clamped to what fits.
    #[arg(long)]
    pub m: Option<usize>,
    /// Defaults to `$STARPART_SEED`, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub max_edge_size: usize,
    #[arg(long, default_value_t = 3)]
    pub max_mult: usize,
    #[arg(long, default_value_t = 2)]
    pub loops: usize,
    #[arg(long, value_enum, default_value = "default")]
    pub caps: CapsArg,
    /// Capacity for `--caps uniform`.
    #[arg(long, default_value_t = 2)]
    pub cap: usize,
    /// Random weights in `1..=max`; unit weights when absent.
    #[arg(long)]
    pub max_weight: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFamily {
    Random,
    Knn,
    Cycle,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "random")]
    pub family: BenchFamily,
    /// Size range `lo..hi` (inclusive).
    #[arg(long, default_value = "200..2000")]
    pub nodes: String,
    /// Number of sizes in the ladder.
    #[arg(long, default_value_t = 5)]
    pub steps: usize,
    /// Average degree for the random family.
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}
