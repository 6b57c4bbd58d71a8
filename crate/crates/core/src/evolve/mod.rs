//! Genetic search over mixture configurations.
//!
//! Individuals are [`Chromosome`]s; fitness is the [`net_distance`] between
//! the target summary and a graph synthesized from the individual (lower is
//! better). Each generation keeps the elites, then fills the population with
//! children produced by tournament selection, uniform crossover and
//! gene-resampling mutation.
//!
//! Every random decision draws from a stream derived from the master seed
//! and a fixed position (generation, individual index), so runs are
//! reproducible regardless of how many worker threads evaluate fitness.

mod chromosome;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tracing::debug;

use crate::distance::{net_distance, summarize_global, GraphSummary, MetricWeights};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::processes::synthesize;

pub use chromosome::{
    derive_gene_ranges, mutate, random_chromosome, repair, uniform_crossover, Chromosome,
    GeneRanges, IntRange, GENE_COUNT,
};

/// Largest default fitness-evaluation graph.
pub const DEFAULT_EVAL_CAP: usize = 1000;

/// Genetic-algorithm settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub p_crossover: f64,
    /// Probability that a child is mutated at all.
    pub p_mutation: f64,
    pub tournament_size: usize,
    /// Probability that a mutated child has any given gene redrawn.
    pub gene_mutation_rate: f64,
    pub elitism_count: usize,
    /// Size of graphs synthesized for fitness; `None` means
    /// `min(target nodes, 1000)`.
    pub eval_size: Option<usize>,
    pub fitness_replicates: usize,
    pub seed: u64,
    pub weights: MetricWeights,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 400,
            generations: 200,
            p_crossover: 0.9,
            p_mutation: 0.2,
            tournament_size: 3,
            gene_mutation_rate: 0.3,
            elitism_count: 1,
            eval_size: None,
            fitness_replicates: 1,
            seed: 0,
            weights: MetricWeights::default(),
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.population_size < 2 {
            return bad(format!("population_size {} < 2", self.population_size));
        }
        if self.generations < 1 {
            return bad("generations must be at least 1".into());
        }
        for (name, p) in [
            ("p_crossover", self.p_crossover),
            ("p_mutation", self.p_mutation),
            ("gene_mutation_rate", self.gene_mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} = {p} is outside [0, 1]"));
            }
        }
        if !(1..=self.population_size).contains(&self.tournament_size) {
            return bad(format!(
                "tournament_size {} must be in [1, {}]",
                self.tournament_size, self.population_size
            ));
        }
        if self.elitism_count > self.population_size {
            return bad(format!(
                "elitism_count {} exceeds population",
                self.elitism_count
            ));
        }
        if self.fitness_replicates < 1 {
            return bad("fitness_replicates must be at least 1".into());
        }
        if let Some(size) = self.eval_size {
            if size < crate::processes::SEED_NODES {
                return bad(format!("eval_size {size} is below the seed graph size"));
            }
        }
        self.weights.validate()
    }

    pub fn resolved_eval_size(&self, target_nodes: usize) -> usize {
        self.eval_size
            .unwrap_or_else(|| target_nodes.min(DEFAULT_EVAL_CAP))
    }
}

/// Statistics of one generation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitnessRecord {
    pub generation: usize,
    pub best_fitness: f64,
    /// Mean over individuals with finite fitness (infinite if none).
    pub mean_fitness: f64,
    pub best: Chromosome,
}

/// Result of [`run_ga`].
#[derive(Debug, Clone)]
pub struct GaOutcome {
    pub best: Chromosome,
    pub best_fitness: f64,
    pub history: Vec<FitnessRecord>,
    pub ranges: GeneRanges,
    pub target: GraphSummary,
    pub eval_size: usize,
}

/// A fully evaluated generation, as seen by observers.
pub struct GenerationView<'a> {
    pub generation: usize,
    pub population: &'a [Chromosome],
    pub fitness: &'a [f64],
}

// Stream tags for seed derivation.
const TAG_TARGET: u64 = 1;
const TAG_INIT: u64 = 2;
const TAG_BREED: u64 = 3;
const TAG_EVAL: u64 = 4;

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic child seed of `master` at the position given by `path`.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix(master), |acc, &p| mix(acc ^ mix(p)))
}

fn replicate_rng(seed: u64, replicate: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate as u64);
    rng
}

/// Synthesizes `eval_size`-node graphs from `c` (ADM steering toward the
/// target's assortativity), and returns the mean [`net_distance`] to the
/// target over `cfg.fitness_replicates` independently seeded replicates.
/// Failed syntheses score `f64::INFINITY`.
pub fn evaluate_fitness(
    c: &Chromosome,
    target: &GraphSummary,
    cfg: &GaConfig,
    eval_size: usize,
    seed: u64,
) -> f64 {
    let mixture = c.to_mixture(target.assortativity);
    let mut total = 0.0;
    for r in 0..cfg.fitness_replicates {
        let mut rng = replicate_rng(seed, r);
        let score = synthesize(&mixture, eval_size, &mut rng)
            .and_then(|g| summarize_global(&g, seed.wrapping_add(r as u64)))
            .map(|s| net_distance(target, &s, &cfg.weights));
        match score {
            Ok(d) => total += d,
            Err(_) => return f64::INFINITY,
        }
    }
    total / cfg.fitness_replicates as f64
}

/// Index of the fittest of `k` members drawn without replacement; ties go
/// to the lowest index.
pub fn tournament_select<R: Rng + ?Sized>(fitness: &[f64], k: usize, rng: &mut R) -> usize {
    index::sample(rng, fitness.len(), k)
        .into_iter()
        .min_by(|&a, &b| fitness[a].total_cmp(&fitness[b]).then(a.cmp(&b)))
        .expect("tournament of at least one")
}

fn ranked(fitness: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..fitness.len()).collect();
    order.sort_by(|&a, &b| fitness[a].total_cmp(&fitness[b]).then(a.cmp(&b)));
    order
}

fn record(generation: usize, population: &[Chromosome], fitness: &[f64]) -> FitnessRecord {
    let best = ranked(fitness)[0];
    let finite: Vec<f64> = fitness.iter().copied().filter(|f| f.is_finite()).collect();
    let mean_fitness = if finite.is_empty() {
        f64::INFINITY
    } else {
        finite.iter().sum::<f64>() / finite.len() as f64
    };
    FitnessRecord {
        generation,
        best_fitness: fitness[best],
        mean_fitness,
        best: population[best],
    }
}

/// [`run_ga`] with a callback invoked after every evaluated generation.
pub fn run_ga_with_observer<F>(
    target: &Graph,
    desired_nodes: usize,
    cfg: &GaConfig,
    mut observer: F,
) -> Result<GaOutcome>
where
    F: FnMut(&GenerationView<'_>),
{
    cfg.validate()?;
    let eval_size = cfg.resolved_eval_size(target.node_count());
    // the final size must admit every lattice degree the search may pick
    derive_gene_ranges(target.node_count(), target.edge_count(), desired_nodes)?;
    let ranges = derive_gene_ranges(target.node_count(), target.edge_count(), eval_size)?;
    let summary = summarize_global(target, derive_seed(cfg.seed, &[TAG_TARGET]))?;

    let evaluate = |generation: usize, population: &[Chromosome], cached: &[Option<f64>]| {
        population
            .par_iter()
            .zip(cached)
            .enumerate()
            .map(|(i, (c, known))| {
                known.unwrap_or_else(|| {
                    let seed = derive_seed(cfg.seed, &[TAG_EVAL, generation as u64, i as u64]);
                    evaluate_fitness(c, &summary, cfg, eval_size, seed)
                })
            })
            .collect::<Vec<f64>>()
    };

    let mut init_rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[TAG_INIT]));
    let mut population: Vec<Chromosome> = (0..cfg.population_size)
        .map(|_| random_chromosome(&ranges, &mut init_rng))
        .collect();
    let mut fitness = evaluate(0, &population, &vec![None; population.len()]);

    let mut history = Vec::with_capacity(cfg.generations);
    let mut best = record(0, &population, &fitness);
    observer(&GenerationView {
        generation: 0,
        population: &population,
        fitness: &fitness,
    });
    history.push(best.clone());

    for generation in 1..cfg.generations {
        let mut rng =
            ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[TAG_BREED, generation as u64]));
        let mut next = Vec::with_capacity(cfg.population_size);
        let mut cached = Vec::with_capacity(cfg.population_size);
        for &i in ranked(&fitness).iter().take(cfg.elitism_count) {
            next.push(population[i]);
            cached.push(Some(fitness[i]));
        }
        while next.len() < cfg.population_size {
            let a = &population[tournament_select(&fitness, cfg.tournament_size, &mut rng)];
            let b = &population[tournament_select(&fitness, cfg.tournament_size, &mut rng)];
            let (x, y) = if rng.random_bool(cfg.p_crossover) {
                uniform_crossover(a, b, &ranges, &mut rng)
            } else {
                (*a, *b)
            };
            for child in [x, y] {
                if next.len() == cfg.population_size {
                    break;
                }
                let child = if rng.random_bool(cfg.p_mutation) {
                    mutate(&child, &ranges, cfg.gene_mutation_rate, &mut rng)
                } else {
                    child
                };
                next.push(child);
                cached.push(None);
            }
        }
        population = next;
        fitness = evaluate(generation, &population, &cached);
        let rec = record(generation, &population, &fitness);
        debug!(
            generation,
            best = rec.best_fitness,
            mean = rec.mean_fitness,
            "generation evaluated"
        );
        observer(&GenerationView {
            generation,
            population: &population,
            fitness: &fitness,
        });
        if rec.best_fitness < best.best_fitness {
            best = rec.clone();
        }
        history.push(rec);
    }

    Ok(GaOutcome {
        best: best.best,
        best_fitness: best.best_fitness,
        history,
        ranges,
        target: summary,
        eval_size,
    })
}

/// Evolves a mixture configuration imitating `target`. `desired_nodes` is
/// the size the fitted model is meant to generate; it must admit the
/// largest lattice degree in the search ranges.
pub fn run_ga(target: &Graph, desired_nodes: usize, cfg: &GaConfig) -> Result<GaOutcome> {
    run_ga_with_observer(target, desired_nodes, cfg, |_| {})
}
