mod args;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use opinion_leaders::centrality::{self as cent, BaselineKind, BaselineParams, ScoreVector};
use opinion_leaders::experiment::{
    leader_count, preferential_attachment, random_digraph, run_comparison, run_fault_tolerance,
    run_sweep, select_leaders, write_fault_csv, write_outputs, ExperimentSpec, InitMode, Method,
};
use opinion_leaders::miner::{mine_top_k, MinerConfig};
use opinion_leaders::output::{fmt_real, write_scores_csv, write_trajectory_csv};
use opinion_leaders::{load_edge_list, DirectedGraph, Error, LoadOptions};
use serde_json::json;

use args::*;

/// Above this many nodes betweenness samples pivots and needs a seed.
const EXACT_BETWEENNESS_LIMIT: usize = 20_000;

enum Failure {
    Usage(String),
    Load(PathBuf, Error),
    Run(Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Load(..) => 3,
            Failure::Run(Error::Parameter(_) | Error::Json(_) | Error::Capacity { .. }) => 2,
            Failure::Run(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Load(path, e) => write!(f, "cannot load {}: {e}", path.display()),
            Failure::Run(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Run(Error::Io(e))
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Stats(a) => stats(a),
        Command::Centrality(a) => centrality(a),
        Command::Leaders(a) => leaders(a),
        Command::Simulate(a) => simulate(a),
        Command::Sweep(a) => sweep(a),
        Command::Faults(a) => faults(a),
        Command::Experiment(ExperimentCommand::Run { spec, output_dir }) => {
            experiment_run(&spec, &output_dir)
        }
        Command::Experiment(ExperimentCommand::Generate(a)) => generate(a),
    }
}

fn load_graph(
    path: &Path,
    numeric_labels: bool,
) -> CliResult<(DirectedGraph, opinion_leaders::LoadReport)> {
    let options = LoadOptions {
        numeric_labels,
        ..Default::default()
    };
    File::open(path)
        .map_err(Error::from)
        .and_then(|f| load_edge_list(BufReader::new(f), &options))
        .map_err(|e| Failure::Load(path.to_owned(), e))
}

fn graph(a: &GraphArgs) -> CliResult<DirectedGraph> {
    Ok(load_graph(&a.graph, a.numeric_labels)?.0)
}

/// Runs `body` against the requested output file or standard output.
fn emit(output: &OutputArg, body: impl FnOnce(&mut dyn Write) -> CliResult) -> CliResult {
    match &output.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn emit_json(output: &OutputArg, value: &serde_json::Value) -> CliResult {
    emit(output, |w| {
        serde_json::to_writer_pretty(&mut *w, value).map_err(Error::from)?;
        writeln!(w)?;
        Ok(())
    })
}

fn stats(a: StatsArgs) -> CliResult {
    let (g, report) = load_graph(&a.graph.graph, a.graph.numeric_labels)?;
    let s = g.stats();
    let value = json!({
        "n": s.n,
        "m": s.m,
        "avg_degree": s.avg_degree,
        "max_degree": s.max_degree,
        "lcc_size": s.lcc_size,
        "lines_read": report.lines,
        "self_loops_dropped": report.self_loops_dropped,
        "duplicates_dropped": report.duplicates_dropped,
    });
    emit_json(&a.output, &value)
}

fn betweenness_seed(g: &DirectedGraph, seed: Option<u64>) -> CliResult<u64> {
    match seed {
        Some(s) => Ok(s),
        None if g.node_count() > EXACT_BETWEENNESS_LIMIT => Err(Failure::Usage(format!(
            "betweenness samples pivots above {EXACT_BETWEENNESS_LIMIT} nodes; pass --seed"
        ))),
        None => Ok(0),
    }
}

fn centrality(a: CentralityArgs) -> CliResult {
    let g = graph(&a.graph)?;
    let mut params = BaselineParams::default();
    params.pagerank.damping = a.damping;
    let scores: ScoreVector = match a.measure {
        Measure::EffectiveDegree => cent::effective_degree(&g),
        Measure::Degree => cent::degree_centrality(&g, a.floor),
        Measure::TwoHop => cent::two_hop_centrality(&g, a.discount, a.floor),
        Measure::DegreeImbalance => cent::degree_imbalance(&g, a.floor),
        Measure::Global => cent::global_centrality(
            &g,
            &cent::GlobalCentralityConfig {
                alpha: a.alpha,
                aggregation_direction: a.orientation,
                zero_centrality_floor: a.floor,
                ..Default::default()
            },
        )?,
        Measure::OutDegree => cent::baseline(&g, BaselineKind::OutDegree, &params)?,
        Measure::Betweenness => {
            params.betweenness.seed = Some(betweenness_seed(&g, a.seed)?);
            cent::baseline(&g, BaselineKind::Betweenness, &params)?
        }
        Measure::Closeness => cent::baseline(&g, BaselineKind::Closeness, &params)?,
        Measure::Eigenvector => cent::baseline(&g, BaselineKind::Eigenvector, &params)?,
        Measure::Pagerank => cent::baseline(&g, BaselineKind::PageRank, &params)?,
    };
    emit(&a.output, |w| Ok(write_scores_csv(w, &g, &scores)?))
}

fn leaders(a: LeadersArgs) -> CliResult {
    let g = graph(&a.graph)?;
    if !(a.leader_fraction > 0.0 && a.leader_fraction <= 1.0) {
        return Err(Failure::Usage(format!(
            "--leader-fraction must lie in (0, 1], got {}",
            a.leader_fraction
        )));
    }
    let k =
        a.k.unwrap_or_else(|| leader_count(a.leader_fraction, g.node_count()));
    let label = |i: usize| g.label(i).to_owned();
    let value = if a.method == Method::ProposedMiner {
        let cfg = MinerConfig {
            bound_variant: a.bound_variant,
            base_vector: a.base_vector,
            aggregation_direction: a.orientation,
            ..MinerConfig::new(k, a.alpha)
        };
        let res = mine_top_k(&g, &cfg)?;
        json!({
            "method": a.method,
            "k": k,
            "alpha": a.alpha,
            "leaders": res.leaders.iter().map(|l| json!({"node": label(l.node), "score": l.score})).collect::<Vec<_>>(),
            "iterations_used": res.iterations_used,
            "pruned_per_iteration": res.pruned_per_iteration,
            "survivors_final": res.survivors_final,
        })
    } else {
        let seed = if a.method == Method::Betweenness {
            betweenness_seed(&g, a.seed)?
        } else {
            0
        };
        let nodes = select_leaders(&g, a.method, k, a.alpha, seed)?;
        json!({
            "method": a.method,
            "k": k,
            "leaders": nodes.iter().map(|&i| json!({"node": label(i)})).collect::<Vec<_>>(),
        })
    };
    emit_json(&a.output, &value)
}

/// Builds an experiment spec from flags, checking seed requirements.
fn study_spec(s: &StudyArgs, g: &DirectedGraph, methods: &[Method]) -> CliResult<ExperimentSpec> {
    let needs_seed = s.init_mode == InitMode::Random
        || (methods.contains(&Method::Betweenness) && g.node_count() > EXACT_BETWEENNESS_LIMIT);
    let base_seed = match s.seed {
        Some(seed) => seed,
        None if needs_seed => {
            return Err(Failure::Usage(
                "this run uses randomness; pass --seed".to_owned(),
            ))
        }
        None => 0,
    };
    let mut spec = ExperimentSpec::new(&s.graph.graph, base_seed);
    spec.model = s.model;
    spec.degroot_variant = s.degroot_variant;
    spec.methods = methods.to_vec();
    spec.leader_fraction = s.leader_fraction;
    spec.init_mode = s.init_mode;
    spec.alpha = s.alpha;
    spec.trials = s.trials;
    spec.max_steps = s.max_steps;
    spec.tolerance = s.tolerance;
    spec.clamp_leaders = !s.no_clamp;
    spec.validate()?;
    Ok(spec)
}

fn simulate(a: SimulateArgs) -> CliResult {
    let g = graph(&a.study.graph)?;
    let spec = study_spec(&a.study, &g, &[a.method])?;
    let res = run_comparison(&g, &spec)?;
    let outcome = &res.outcomes[0];
    if outcome.trials.iter().any(|t| !t.converged) {
        eprintln!("warning: some trials stopped at --max-steps before converging");
    }
    emit(&a.output, |w| {
        Ok(write_trajectory_csv(w, &outcome.mean_trajectory)?)
    })
}

fn sweep(a: SweepArgs) -> CliResult {
    let g = graph(&a.study.graph)?;
    let spec = study_spec(&a.study, &g, &[Method::ProposedMiner])?;
    let rows = run_sweep(&g, a.kind, &a.values, &spec)?;
    emit(&a.output, |w| {
        writeln!(w, "value,final_mean")?;
        for r in &rows {
            writeln!(w, "{},{}", fmt_real(r.value), fmt_real(r.final_mean))?;
        }
        Ok(())
    })
}

fn faults(a: FaultsArgs) -> CliResult {
    let g = graph(&a.graph)?;
    if a.methods.is_empty() {
        return Err(Failure::Usage(
            "--methods needs at least one method".to_owned(),
        ));
    }
    let res = run_fault_tolerance(
        &g,
        &a.methods,
        &a.counts,
        a.trials,
        a.seed,
        a.alpha,
        a.normalization,
    )?;
    emit(&a.output, |w| Ok(write_fault_csv(w, &res)?))
}

fn experiment_run(spec_path: &Path, output_dir: &Path) -> CliResult {
    let text = std::fs::read_to_string(spec_path)
        .map_err(|e| Failure::Usage(format!("cannot read spec {}: {e}", spec_path.display())))?;
    let spec = ExperimentSpec::from_json(&text)?;
    let graph_path = match spec_path.parent() {
        Some(dir) if spec.graph_path.is_relative() => dir.join(&spec.graph_path),
        _ => spec.graph_path.clone(),
    };
    let (g, _) = load_graph(&graph_path, false)?;
    let comparison = run_comparison(&g, &spec)?;
    let faults = if spec.spurious_counts.is_empty() {
        None
    } else {
        Some(run_fault_tolerance(
            &g,
            &[
                opinion_leaders::experiment::FaultMethod::GlobalCentrality,
                opinion_leaders::experiment::FaultMethod::PageRank,
            ],
            &spec.spurious_counts,
            spec.trials,
            spec.base_seed,
            spec.alpha,
            Default::default(),
        )?)
    };
    write_outputs(output_dir, &g, &spec, &comparison, faults.as_ref())?;
    Ok(())
}

fn generate(a: GenerateArgs) -> CliResult {
    let g = match a.kind {
        GeneratorKind::PreferentialAttachment => preferential_attachment(a.n, a.m0, a.seed)?,
        GeneratorKind::Gnp => random_digraph(a.n, a.p, a.seed)?,
    };
    emit(&a.output, |w| Ok(g.write_edge_list(w)?))
}
