//! Argument parsing and command dispatch.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use procmix::baselines::BaselineSpec;
use procmix::distance::{compare, MetricWeights};
use procmix::evolve::run_ga;
use procmix::graph::write_edge_list;
use procmix::processes::synthesize;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tracing::info;

use crate::config::RunConfig;
use crate::model::{ModelDocument, Provenance};
use crate::output::{load_graph, load_graph_with_digest, OutputSet};
use crate::report::{degree_histogram_csv, history_csv, report_csv, report_json};

#[derive(Debug, Parser)]
#[command(
    name = "procmix",
    version,
    about = "Fit and sample adaptive mixture network models"
)]
pub struct Cli {
    /// More log output on stderr (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a model that imitates a target graph.
    Fit(Box<FitArgs>),
    /// Sample a graph from a fitted model.
    Generate(GenerateArgs),
    /// Per-metric error report between two graphs.
    Compare(CompareArgs),
    /// Generate a classical baseline graph.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Target edge list (may instead come from the config file).
    pub target: Option<PathBuf>,
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub gens: Option<usize>,
    /// Crossover probability.
    #[arg(long)]
    pub pc: Option<f64>,
    /// Per-individual mutation probability.
    #[arg(long)]
    pub pm: Option<f64>,
    #[arg(long)]
    pub tournament: Option<usize>,
    #[arg(long)]
    pub gene_mutation_rate: Option<f64>,
    #[arg(long)]
    pub elites: Option<usize>,
    /// Node count of graphs synthesized during fitness evaluation.
    #[arg(long)]
    pub eval_size: Option<usize>,
    #[arg(long)]
    pub replicates: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for fitness evaluation.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Distance weights: ddqc,clustering,transitivity,assortativity,modularity.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    /// Size the model is meant to generate (defaults to the target size).
    #[arg(long)]
    pub desired_nodes: Option<usize>,
    /// Model output path.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Fitness history CSV (defaults next to the model).
    #[arg(long)]
    pub history: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub model: PathBuf,
    /// Number of nodes to generate.
    #[arg(short = 'n', long)]
    pub nodes: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Edge-list output (stdout if absent).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Reference graph.
    pub a: PathBuf,
    /// Graph compared against the reference.
    pub b: PathBuf,
    /// Seed for community detection.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Writes PREFIX.csv, PREFIX.json and PREFIX.degrees.csv; without it
    /// the CSV report goes to stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineKind {
    Ba,
    Er,
    Ws,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    pub model: BaselineKind,
    #[arg(short = 'n', long)]
    pub nodes: usize,
    /// Attachments per newcomer (ba).
    #[arg(short = 'm')]
    pub m: Option<usize>,
    /// Lattice degree (ws).
    #[arg(short = 'K')]
    pub k: Option<usize>,
    /// Edge probability (er) or rewiring probability (ws).
    #[arg(short = 'p')]
    pub p: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        eprintln!("seed: {s}");
        s
    })
}

fn emit(output: Option<&Path>, contents: String) -> Result<()> {
    match output {
        Some(path) => {
            let mut out = OutputSet::new();
            out.add(path, contents);
            out.commit()?;
        }
        None => std::io::stdout()
            .write_all(contents.as_bytes())
            .context("writing to stdout")?,
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Fit(args) => fit(*args),
        Command::Generate(args) => generate(args),
        Command::Compare(args) => compare_cmd(args),
        Command::Synth(args) => synth(args),
    }
}

fn merged_config(args: &FitArgs) -> Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    macro_rules! apply {
        ($($flag:ident => $field:ident),* $(,)?) => {
            $(if let Some(v) = args.$flag { cfg.$field = v; })*
        };
    }
    apply!(
        pop => population_size,
        gens => generations,
        pc => p_crossover,
        pm => p_mutation,
        tournament => tournament_size,
        gene_mutation_rate => gene_mutation_rate,
        elites => elitism_count,
        replicates => fitness_replicates,
    );
    if args.eval_size.is_some() {
        cfg.eval_size = args.eval_size;
    }
    if args.seed.is_some() {
        cfg.seed = args.seed;
    }
    if args.threads.is_some() {
        cfg.threads = args.threads;
    }
    if args.desired_nodes.is_some() {
        cfg.desired_nodes = args.desired_nodes;
    }
    if let Some(w) = &args.weights {
        cfg.set_weights(&MetricWeights::from_slice(w)?);
    }
    if args.target.is_some() {
        cfg.target.clone_from(&args.target);
    }
    if args.output.is_some() {
        cfg.output.clone_from(&args.output);
    }
    if args.history.is_some() {
        cfg.history.clone_from(&args.history);
    }
    Ok(cfg)
}

fn fit(args: FitArgs) -> Result<()> {
    let cfg = merged_config(&args)?;
    let Some(target_path) = cfg.target.clone() else {
        bail!("no target graph given (positional argument or \"target\" in the config)");
    };
    if let Some(threads) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring worker threads")?;
    }
    let seed = resolve_seed(cfg.seed);
    let ga = cfg.ga_config(seed);
    let (target, digest) = load_graph_with_digest(&target_path)?;
    let desired = cfg.desired_nodes.unwrap_or(target.node_count());

    let outcome = run_ga(&target, desired, &ga)?;
    if !outcome.best_fitness.is_finite() {
        bail!("no individual could be evaluated; every synthesis failed");
    }
    let doc = ModelDocument {
        model: outcome.best.to_mixture(outcome.target.assortativity),
        gene_ranges: outcome.ranges,
        provenance: Provenance {
            target_sha256: digest,
            target_nodes: target.node_count(),
            target_edges: target.edge_count(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            eval_size: outcome.eval_size,
            generations: ga.generations,
            final_fitness: outcome.best_fitness,
        },
    };

    let model_path = cfg
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from("model.json"));
    let history_path = cfg
        .history
        .clone()
        .unwrap_or_else(|| model_path.with_extension("history.csv"));
    let mut out = OutputSet::new();
    out.add(&model_path, doc.to_json()?);
    out.add(&history_path, history_csv(&outcome.history));
    out.commit()?;
    info!(fitness = outcome.best_fitness, "fit finished");
    eprintln!(
        "best fitness {} after {} generations; wrote {} and {}",
        outcome.best_fitness,
        ga.generations,
        model_path.display(),
        history_path.display()
    );
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<()> {
    let doc = ModelDocument::load(&args.model)?;
    let k_max = doc.gene_ranges.k.max;
    if args.nodes <= k_max {
        bail!(
            "cannot generate {} nodes: the model's lattice degree range needs more than {k_max}",
            args.nodes
        );
    }
    let seed = resolve_seed(args.seed);
    let g = synthesize(&doc.model, args.nodes, &mut ChaCha8Rng::seed_from_u64(seed))?;
    emit(args.output.as_deref(), write_edge_list(&g))
}

fn compare_cmd(args: CompareArgs) -> Result<()> {
    let a = load_graph(&args.a)?;
    let b = load_graph(&args.b)?;
    let seed = resolve_seed(args.seed);
    let rows = compare(&a, &b, seed)?;
    let Some(prefix) = args.output else {
        return emit(None, report_csv(&rows));
    };
    let with_suffix = |suffix: &str| {
        let mut s = prefix.clone().into_os_string();
        s.push(suffix);
        PathBuf::from(s)
    };
    let mut out = OutputSet::new();
    out.add(with_suffix(".csv"), report_csv(&rows));
    out.add(with_suffix(".json"), report_json(&rows)?);
    out.add(with_suffix(".degrees.csv"), degree_histogram_csv(&a, &b));
    out.commit()?;
    Ok(())
}

fn baseline_spec(args: &SynthArgs) -> Result<BaselineSpec> {
    let n = args.nodes;
    let missing = |flag: &str| anyhow::anyhow!("{:?} needs -{flag}", args.model);
    Ok(match args.model {
        BaselineKind::Ba => BaselineSpec::Ba {
            n,
            m: args.m.ok_or_else(|| missing("m"))?,
        },
        BaselineKind::Er => BaselineSpec::Er {
            n,
            p: args.p.ok_or_else(|| missing("p"))?,
        },
        BaselineKind::Ws => BaselineSpec::Ws {
            n,
            k: args.k.ok_or_else(|| missing("K"))?,
            p: args.p.ok_or_else(|| missing("p"))?,
        },
    })
}

fn synth(args: SynthArgs) -> Result<()> {
    let spec = baseline_spec(&args)?;
    let seed = resolve_seed(args.seed);
    let g = spec.generate(&mut ChaCha8Rng::seed_from_u64(seed))?;
    emit(args.output.as_deref(), write_edge_list(&g))
}
