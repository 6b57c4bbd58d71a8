//! Global topology measurements and per-node property sequences.

mod assortativity;
mod centrality;
mod clustering;
mod community;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use assortativity::{assortativity, DegreeMoments};
pub use centrality::{betweenness, closeness, eigenvector, pagerank, PAGERANK_DAMPING};
pub use clustering::{average_clustering, local_clustering, transitivity, triangles_per_node};
pub use community::{best_partition_modularity, modularity_of, Partition};

/// A scalar measurement plus a flag raised when the input made the
/// quantity undefined and the value was substituted with 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measured {
    pub value: f64,
    pub degenerate: bool,
}

impl Measured {
    pub fn ok(value: f64) -> Self {
        Self {
            value,
            degenerate: false,
        }
    }

    pub fn degenerate() -> Self {
        Self {
            value: 0.0,
            degenerate: true,
        }
    }
}

/// Node properties whose distributions are compared between graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyKind {
    Degree,
    LocalClustering,
    Closeness,
    Betweenness,
    Eigenvector,
    Pagerank,
}

impl PropertyKind {
    pub const ALL: [PropertyKind; 6] = [
        PropertyKind::Degree,
        PropertyKind::LocalClustering,
        PropertyKind::Closeness,
        PropertyKind::Betweenness,
        PropertyKind::Eigenvector,
        PropertyKind::Pagerank,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyKind::Degree => "degree",
            PropertyKind::LocalClustering => "local-clustering",
            PropertyKind::Closeness => "closeness",
            PropertyKind::Betweenness => "betweenness",
            PropertyKind::Eigenvector => "eigenvector",
            PropertyKind::Pagerank => "pagerank",
        }
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

/// One value per node for the requested property.
pub fn property_values(g: &Graph, kind: PropertyKind) -> Result<Vec<f64>> {
    Ok(match kind {
        PropertyKind::Degree => g.degrees().into_iter().map(|d| d as f64).collect(),
        PropertyKind::LocalClustering => local_clustering(g),
        PropertyKind::Closeness => closeness(g),
        PropertyKind::Betweenness => betweenness(g),
        PropertyKind::Eigenvector => eigenvector(g)?,
        PropertyKind::Pagerank => pagerank(g),
    })
}
