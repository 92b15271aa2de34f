use std::path::PathBuf;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;

/// Parses one of `names` into a library enum through its serde name.
fn named<T>(names: &'static [&'static str]) -> impl TypedValueParser<Value = T>
where
    T: DeserializeOwned + Clone + Send + Sync + 'static,
{
    PossibleValuesParser::new(names).map(|s| {
        serde_json::from_value(serde_json::Value::String(s)).expect("listed names deserialize")
    })
}

pub const MODELS: &[&str] = &["proposed", "degroot", "friedkin-johnsen"];
pub const DEGROOT_VARIANTS: &[&str] = &["global", "two-hop", "degree-imbalance"];
pub const METHODS: &[&str] = &[
    "proposed-miner",
    "out-degree",
    "betweenness",
    "closeness",
    "eigenvector",
    "pagerank",
];
pub const INIT_MODES: &[&str] = &["zero", "half", "random"];
pub const ORIENTATIONS: &[&str] = &["out-neighbors", "in-neighbors"];
pub const BOUND_VARIANTS: &[&str] = &["proposition1-C-range", "algorithm-listing-iterate-range"];
pub const BASE_VECTORS: &[&str] = &["degree-centrality", "effective-degree"];
pub const FAULT_METHODS: &[&str] = &["global-centrality", "pagerank"];
pub const NORMALIZATIONS: &[&str] = &["min-max", "sum"];
pub const SWEEP_KINDS: &[&str] = &["leader-fraction", "alpha"];

#[derive(Debug, Parser)]
#[command(
    name = "opinion-leaders",
    version,
    about = "Opinion-leader detection and opinion dynamics on directed graphs"
)]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores). Results do
    /// not depend on this value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print node count, edge count, degrees and largest weak component as JSON.
    Stats(StatsArgs),
    /// Write per-node scores as `node_label,score` CSV, highest first.
    Centrality(CentralityArgs),
    /// Select opinion leaders and print them as JSON.
    Leaders(LeadersArgs),
    /// Simulate opinion formation for one leader-selection method and write
    /// the trial-averaged `step,mean_opinion` CSV.
    Simulate(SimulateArgs),
    /// Final mean opinion of the proposed miner across leader fractions or
    /// alpha values, as `value,final_mean` CSV.
    Sweep(SweepArgs),
    /// Score disagreement after adding spurious edges, as CSV.
    Faults(FaultsArgs),
    /// Run or prepare a full study.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge list: one `source target` pair per line, `%` and `#` start comments.
    #[arg(long)]
    pub graph: PathBuf,
    /// Reject node labels that are not unsigned integers.
    #[arg(long)]
    pub numeric_labels: bool,
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Output file (default: standard output).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    EffectiveDegree,
    Degree,
    TwoHop,
    DegreeImbalance,
    Global,
    OutDegree,
    Betweenness,
    Closeness,
    Eigenvector,
    Pagerank,
}

#[derive(Debug, Args)]
pub struct CentralityArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum)]
    pub measure: Measure,
    /// Weight of the base centrality in the global blend.
    #[arg(long, default_value = "0.8")]
    pub alpha: f64,
    /// Weight of two-hop walks for `two-hop`.
    #[arg(long, default_value = "0.5")]
    pub discount: f64,
    /// Value given to nodes whose shifted score is exactly zero.
    #[arg(long, default_value = "0.01")]
    pub floor: f64,
    #[arg(long, default_value = "out-neighbors", value_parser = named::<opinion_leaders::centrality::Orientation>(ORIENTATIONS))]
    pub orientation: opinion_leaders::centrality::Orientation,
    /// Damping factor for `pagerank`.
    #[arg(long, default_value = "0.85")]
    pub damping: f64,
    /// Seed for pivot sampling in `betweenness` on graphs above 20000 nodes.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, Args)]
pub struct LeadersArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Number of leaders; overrides `--leader-fraction`.
    #[arg(long)]
    pub k: Option<usize>,
    /// Leaders as a fraction of the node count, rounded up.
    #[arg(long, default_value = "0.10")]
    pub leader_fraction: f64,
    #[arg(long, default_value = "0.8")]
    pub alpha: f64,
    #[arg(long, default_value = "proposed-miner", value_parser = named::<opinion_leaders::experiment::Method>(METHODS))]
    pub method: opinion_leaders::experiment::Method,
    #[arg(long, default_value = "proposition1-C-range", value_parser = named::<opinion_leaders::miner::BoundVariant>(BOUND_VARIANTS))]
    pub bound_variant: opinion_leaders::miner::BoundVariant,
    #[arg(long, default_value = "degree-centrality", value_parser = named::<opinion_leaders::miner::BaseVector>(BASE_VECTORS))]
    pub base_vector: opinion_leaders::miner::BaseVector,
    #[arg(long, default_value = "out-neighbors", value_parser = named::<opinion_leaders::centrality::Orientation>(ORIENTATIONS))]
    pub orientation: opinion_leaders::centrality::Orientation,
    /// Seed for pivot sampling when `--method betweenness` samples.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: OutputArg,
}

/// Settings shared by `simulate` and `sweep`.
#[derive(Debug, Args)]
pub struct StudyArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value = "proposed", value_parser = named::<opinion_leaders::experiment::Model>(MODELS))]
    pub model: opinion_leaders::experiment::Model,
    /// Node scores weighting the DeGroot trust matrix.
    #[arg(long, default_value = "global", value_parser = named::<opinion_leaders::experiment::DegrootVariant>(DEGROOT_VARIANTS))]
    pub degroot_variant: opinion_leaders::experiment::DegrootVariant,
    #[arg(long, default_value = "0.10")]
    pub leader_fraction: f64,
    #[arg(long = "init", default_value = "zero", value_parser = named::<opinion_leaders::experiment::InitMode>(INIT_MODES))]
    pub init_mode: opinion_leaders::experiment::InitMode,
    #[arg(long, default_value = "0.8")]
    pub alpha: f64,
    #[arg(long, default_value = "20")]
    pub trials: usize,
    /// Base seed; required with `--init random`.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "10000")]
    pub max_steps: usize,
    /// Convergence threshold on the largest per-node opinion change.
    #[arg(long, default_value = "1e-9")]
    pub tolerance: f64,
    /// Let leaders' opinions evolve instead of holding them at 1.
    #[arg(long)]
    pub no_clamp: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub study: StudyArgs,
    #[arg(long, default_value = "proposed-miner", value_parser = named::<opinion_leaders::experiment::Method>(METHODS))]
    pub method: opinion_leaders::experiment::Method,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub study: StudyArgs,
    #[arg(long, value_parser = named::<opinion_leaders::experiment::SweepKind>(SWEEP_KINDS))]
    pub kind: opinion_leaders::experiment::SweepKind,
    /// Comma-separated parameter values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, Args)]
pub struct FaultsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Comma-separated spurious-edge counts.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,100,200,300,400,500,600,700,800,900,1000"
    )]
    pub counts: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "global-centrality,pagerank", value_parser = named::<opinion_leaders::experiment::FaultMethod>(FAULT_METHODS))]
    pub methods: Vec<opinion_leaders::experiment::FaultMethod>,
    #[arg(long, default_value = "20")]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value = "0.8")]
    pub alpha: f64,
    #[arg(long, default_value = "min-max", value_parser = named::<opinion_leaders::experiment::Normalization>(NORMALIZATIONS))]
    pub normalization: opinion_leaders::experiment::Normalization,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Run the study described by a JSON spec and write its CSV and JSON
    /// outputs. A relative `graph_path` is resolved against the spec's folder.
    Run {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = "results")]
        output_dir: PathBuf,
    },
    /// Write a seeded synthetic edge list.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    /// Directed preferential attachment; each new node links to `m0` earlier
    /// nodes chosen by in-degree.
    PreferentialAttachment,
    /// Every ordered pair is an edge with probability `p`.
    Gnp,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum, default_value = "preferential-attachment")]
    pub kind: GeneratorKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "4")]
    pub m0: usize,
    #[arg(long, default_value = "0.1")]
    pub p: f64,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArg,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn every_listed_name_parses() {
        use opinion_leaders::{centrality, experiment, miner};
        fn all<T: DeserializeOwned>(names: &[&str]) {
            for n in names {
                serde_json::from_value::<T>(serde_json::Value::String((*n).into()))
                    .unwrap_or_else(|e| panic!("{n}: {e}"));
            }
        }
        all::<experiment::Model>(MODELS);
        all::<experiment::DegrootVariant>(DEGROOT_VARIANTS);
        all::<experiment::Method>(METHODS);
        all::<experiment::InitMode>(INIT_MODES);
        all::<centrality::Orientation>(ORIENTATIONS);
        all::<miner::BoundVariant>(BOUND_VARIANTS);
        all::<miner::BaseVector>(BASE_VECTORS);
        all::<experiment::FaultMethod>(FAULT_METHODS);
        all::<experiment::Normalization>(NORMALIZATIONS);
        all::<experiment::SweepKind>(SWEEP_KINDS);
    }
}
