//! Size-independent dissimilarity between graphs.
//!
//! [`net_distance`] is the weighted Manhattan distance over a
//! [`GraphSummary`] and serves as the fitness of the evolutionary search.
//! [`metric_error`] and [`compare`] produce the per-metric errors used in
//! evaluation reports: absolute differences for global metrics, DDQC for the
//! degree distribution, and KS statistics for node-property distributions.

mod ddqc;
mod ks;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::{
    self, best_partition_modularity, property_values, triangles_per_node, PropertyKind,
};

pub use ddqc::{ddqc_boundaries, ddqc_distance, ddqc_features, ddqc_l1, DDQC_BINS};
pub use ks::{ks_sorted, ks_statistic};

/// Cached measurements of one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub avg_clustering: f64,
    pub transitivity: f64,
    pub assortativity: f64,
    pub modularity: f64,
    pub ddqc_features: [f64; DDQC_BINS],
    pub node_count: usize,
    pub edge_count: usize,
    /// Sorted per-node values; empty for summaries built with
    /// [`summarize_global`].
    pub property_samples: BTreeMap<PropertyKind, Vec<f64>>,
}

fn clustering_pair(g: &Graph) -> (f64, f64) {
    let tri = triangles_per_node(g);
    let mut local_sum = 0.0;
    let mut triples = 0usize;
    for (v, &t) in tri.iter().enumerate() {
        let d = g.neighbors(v).len();
        if d >= 2 {
            let pairs = d * (d - 1) / 2;
            local_sum += t as f64 / pairs as f64;
            triples += pairs;
        }
    }
    let avg = local_sum / g.node_count() as f64;
    let total: usize = tri.iter().sum();
    let trans = if triples == 0 {
        0.0
    } else {
        total as f64 / triples as f64
    };
    (avg, trans)
}

/// Global measurements only: everything [`net_distance`] needs. This is the
/// fitness-evaluation path, so the quadratic centralities are skipped.
pub fn summarize_global(g: &Graph, seed: u64) -> Result<GraphSummary> {
    if g.node_count() < 2 || g.edge_count() == 0 {
        return Err(Error::DegenerateGraph(format!(
            "need at least 2 nodes and 1 edge, got {} nodes and {} edges",
            g.node_count(),
            g.edge_count()
        )));
    }
    let (avg_clustering, transitivity) = clustering_pair(g);
    Ok(GraphSummary {
        avg_clustering,
        transitivity,
        assortativity: metrics::assortativity(g).value,
        modularity: best_partition_modularity(g, seed).1,
        ddqc_features: ddqc_features(g),
        node_count: g.node_count(),
        edge_count: g.edge_count(),
        property_samples: BTreeMap::new(),
    })
}

/// Complete summary including sorted samples of all six node properties.
pub fn summarize(g: &Graph, seed: u64) -> Result<GraphSummary> {
    let mut s = summarize_global(g, seed)?;
    for kind in PropertyKind::ALL {
        s.property_samples.insert(kind, sorted_property(g, kind)?);
    }
    Ok(s)
}

fn sorted_property(g: &Graph, kind: PropertyKind) -> Result<Vec<f64>> {
    let mut v = property_values(g, kind)?;
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Non-negative weight per component of [`net_distance`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricWeights {
    pub ddqc: f64,
    pub clustering: f64,
    pub transitivity: f64,
    pub assortativity: f64,
    pub modularity: f64,
}

impl Default for MetricWeights {
    fn default() -> Self {
        Self::uniform(1.0)
    }
}

impl MetricWeights {
    pub fn uniform(w: f64) -> Self {
        Self {
            ddqc: w,
            clustering: w,
            transitivity: w,
            assortativity: w,
            modularity: w,
        }
    }

    /// Weights in the order ddqc, clustering, transitivity, assortativity,
    /// modularity.
    pub fn from_slice(values: &[f64]) -> Result<Self> {
        let [ddqc, clustering, transitivity, assortativity, modularity] = values else {
            return Err(Error::Config(format!(
                "expected 5 weights, got {}",
                values.len()
            )));
        };
        let w = Self {
            ddqc: *ddqc,
            clustering: *clustering,
            transitivity: *transitivity,
            assortativity: *assortativity,
            modularity: *modularity,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn as_array(&self) -> [f64; 5] {
        [
            self.ddqc,
            self.clustering,
            self.transitivity,
            self.assortativity,
            self.modularity,
        ]
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.as_array();
        if a.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Config("weights must be finite and >= 0".into()));
        }
        if a.iter().all(|&w| w == 0.0) {
            return Err(Error::Config("at least one weight must be positive".into()));
        }
        Ok(())
    }
}

/// `Σ w_i |m_i(a) − m_i(b)|`, where the degree-distribution term is the L1
/// distance between the DDQC feature vectors.
pub fn net_distance(a: &GraphSummary, b: &GraphSummary, w: &MetricWeights) -> f64 {
    w.ddqc * ddqc_l1(&a.ddqc_features, &b.ddqc_features)
        + w.clustering * (a.avg_clustering - b.avg_clustering).abs()
        + w.transitivity * (a.transitivity - b.transitivity).abs()
        + w.assortativity * (a.assortativity - b.assortativity).abs()
        + w.modularity * (a.modularity - b.modularity).abs()
}

/// Metrics reported by [`compare`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetricId {
    AvgClustering,
    Transitivity,
    Assortativity,
    Modularity,
    Ddqc,
    Property(PropertyKind),
}

impl MetricId {
    /// Report order: global metrics, DDQC, then node-property distributions.
    pub const ALL: [MetricId; 11] = [
        MetricId::AvgClustering,
        MetricId::Transitivity,
        MetricId::Assortativity,
        MetricId::Modularity,
        MetricId::Ddqc,
        MetricId::Property(PropertyKind::Degree),
        MetricId::Property(PropertyKind::Betweenness),
        MetricId::Property(PropertyKind::Closeness),
        MetricId::Property(PropertyKind::Eigenvector),
        MetricId::Property(PropertyKind::Pagerank),
        MetricId::Property(PropertyKind::LocalClustering),
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricId::AvgClustering => "avg-clustering",
            MetricId::Transitivity => "transitivity",
            MetricId::Assortativity => "assortativity",
            MetricId::Modularity => "modularity",
            MetricId::Ddqc => "ddqc",
            MetricId::Property(k) => k.as_str(),
        }
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

impl Serialize for MetricId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

fn global_value(g: &Graph, metric: MetricId, seed: u64) -> Option<f64> {
    match metric {
        MetricId::AvgClustering => Some(metrics::average_clustering(g).value),
        MetricId::Transitivity => Some(metrics::transitivity(g)),
        MetricId::Assortativity => Some(metrics::assortativity(g).value),
        MetricId::Modularity => Some(best_partition_modularity(g, seed).1),
        MetricId::Ddqc | MetricId::Property(_) => None,
    }
}

/// Dissimilarity of two graphs under one metric: absolute difference for
/// global metrics, DDQC distance for `ddqc`, KS statistic of the value
/// sequences for node properties.
pub fn metric_error(target: &Graph, synth: &Graph, metric: MetricId, seed: u64) -> Result<f64> {
    match metric {
        MetricId::Ddqc => Ok(ddqc_distance(target, synth)),
        MetricId::Property(kind) => ks_statistic(
            &property_values(target, kind)?,
            &property_values(synth, kind)?,
        ),
        _ => {
            let a = global_value(target, metric, seed).expect("global metric");
            let b = global_value(synth, metric, seed).expect("global metric");
            Ok((a - b).abs())
        }
    }
}

/// Same as [`metric_error`] with the metric given by name.
pub fn metric_error_by_name(target: &Graph, synth: &Graph, metric: &str, seed: u64) -> Result<f64> {
    metric_error(target, synth, metric.parse()?, seed)
}

/// One line of a comparison report. Values are the metric itself for
/// global metrics, the mean node value for node properties, and absent for
/// DDQC.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub metric: MetricId,
    pub value_target: Option<f64>,
    pub value_synth: Option<f64>,
    pub error: f64,
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Rows for all metrics in [`MetricId::ALL`] order, computed from two full
/// summaries.
pub fn compare_summaries(target: &GraphSummary, synth: &GraphSummary) -> Result<Vec<ReportRow>> {
    MetricId::ALL
        .into_iter()
        .map(|metric| {
            let scalar = |a: f64, b: f64| ReportRow {
                metric,
                value_target: Some(a),
                value_synth: Some(b),
                error: (a - b).abs(),
            };
            Ok(match metric {
                MetricId::AvgClustering => scalar(target.avg_clustering, synth.avg_clustering),
                MetricId::Transitivity => scalar(target.transitivity, synth.transitivity),
                MetricId::Assortativity => scalar(target.assortativity, synth.assortativity),
                MetricId::Modularity => scalar(target.modularity, synth.modularity),
                MetricId::Ddqc => ReportRow {
                    metric,
                    value_target: None,
                    value_synth: None,
                    error: ddqc_l1(&target.ddqc_features, &synth.ddqc_features),
                },
                MetricId::Property(kind) => {
                    let missing =
                        || Error::InvalidArgument(format!("summary lacks {kind} samples"));
                    let a = target.property_samples.get(&kind).ok_or_else(missing)?;
                    let b = synth.property_samples.get(&kind).ok_or_else(missing)?;
                    if a.is_empty() || b.is_empty() {
                        return Err(Error::InvalidArgument(format!("empty {kind} sample")));
                    }
                    ReportRow {
                        metric,
                        value_target: Some(mean(a)),
                        value_synth: Some(mean(b)),
                        error: ks_sorted(a, b),
                    }
                }
            })
        })
        .collect()
}

/// Full comparison report of `synth` against `target`.
pub fn compare(target: &Graph, synth: &Graph, seed: u64) -> Result<Vec<ReportRow>> {
    compare_summaries(&summarize(target, seed)?, &summarize(synth, seed)?)
}
