//! Fitted-model document written by `fit` and read by `generate`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use procmix::evolve::{Chromosome, GeneRanges};
use procmix::processes::MixtureConfig;
use serde::{Deserialize, Serialize};

/// Where a model came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    /// Hex SHA-256 of the target edge-list file.
    pub target_sha256: String,
    pub target_nodes: usize,
    pub target_edges: usize,
    pub seed: u64,
    pub tool_version: String,
    pub eval_size: usize,
    pub generations: usize,
    pub final_fitness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    /// Evolved genes plus the target assortativity.
    pub model: MixtureConfig,
    /// Search intervals the genes were drawn from.
    pub gene_ranges: GeneRanges,
    pub provenance: Provenance,
}

impl ModelDocument {
    pub fn chromosome(&self) -> Chromosome {
        Chromosome::from(&self.model)
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if !self.gene_ranges.admits(&self.chromosome(), 1e-9) {
            bail!("model genes fall outside the recorded gene ranges");
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading model {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("parsing model {}", path.display()))
    }
}
