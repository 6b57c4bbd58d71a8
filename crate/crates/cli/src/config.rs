//! Run configuration file for `fit`.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use procmix::distance::MetricWeights;
use procmix::evolve::GaConfig;
use serde::{Deserialize, Serialize};

/// Flat key-value run document. Missing keys take the [`GaConfig`]
/// defaults; unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub population_size: usize,
    pub generations: usize,
    pub p_crossover: f64,
    pub p_mutation: f64,
    pub tournament_size: usize,
    pub gene_mutation_rate: f64,
    pub elitism_count: usize,
    pub eval_size: Option<usize>,
    pub fitness_replicates: usize,
    pub seed: Option<u64>,
    pub w_ddqc: f64,
    pub w_clustering: f64,
    pub w_transitivity: f64,
    pub w_assortativity: f64,
    pub w_modularity: f64,
    /// Size the fitted model is meant to generate; defaults to the target
    /// size.
    pub desired_nodes: Option<usize>,
    pub threads: Option<usize>,
    pub target: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub history: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let ga = GaConfig::default();
        let w = ga.weights;
        Self {
            population_size: ga.population_size,
            generations: ga.generations,
            p_crossover: ga.p_crossover,
            p_mutation: ga.p_mutation,
            tournament_size: ga.tournament_size,
            gene_mutation_rate: ga.gene_mutation_rate,
            elitism_count: ga.elitism_count,
            eval_size: ga.eval_size,
            fitness_replicates: ga.fitness_replicates,
            seed: None,
            w_ddqc: w.ddqc,
            w_clustering: w.clustering,
            w_transitivity: w.transitivity,
            w_assortativity: w.assortativity,
            w_modularity: w.modularity,
            desired_nodes: None,
            threads: None,
            target: None,
            output: None,
            history: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn weights(&self) -> MetricWeights {
        MetricWeights {
            ddqc: self.w_ddqc,
            clustering: self.w_clustering,
            transitivity: self.w_transitivity,
            assortativity: self.w_assortativity,
            modularity: self.w_modularity,
        }
    }

    pub fn set_weights(&mut self, w: &MetricWeights) {
        self.w_ddqc = w.ddqc;
        self.w_clustering = w.clustering;
        self.w_transitivity = w.transitivity;
        self.w_assortativity = w.assortativity;
        self.w_modularity = w.modularity;
    }

    pub fn ga_config(&self, seed: u64) -> GaConfig {
        GaConfig {
            population_size: self.population_size,
            generations: self.generations,
            p_crossover: self.p_crossover,
            p_mutation: self.p_mutation,
            tournament_size: self.tournament_size,
            gene_mutation_rate: self.gene_mutation_rate,
            elitism_count: self.elitism_count,
            eval_size: self.eval_size,
            fitness_replicates: self.fitness_replicates,
            seed,
            weights: self.weights(),
        }
    }
}
