//! Simple undirected graph storage and the edge-list text format.
//!
//! Nodes are dense ids `0..node_count`. Each node keeps a sorted neighbor
//! list, so membership tests are a binary search and iteration order is
//! deterministic (important for seeded reproducibility).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::BufRead;
use std::ops::Range;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Simple undirected, unweighted graph: no self-loops and no parallel edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `n` isolated nodes.
    pub fn new(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            g.adjacency[u] = (0..n).filter(|&v| v != u).collect();
        }
        g.edge_count = n * n.saturating_sub(1) / 2;
        g
    }

    /// Builds a graph on `n` nodes from an edge iterator. Self-loops and
    /// duplicates are silently dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Appends one isolated node and returns its id.
    pub fn add_node(&mut self) -> NodeId {
        self.adjacency.push(Vec::new());
        self.adjacency.len() - 1
    }

    /// Appends `k` isolated nodes and returns their id range.
    pub fn add_nodes(&mut self, k: usize) -> Range<NodeId> {
        let start = self.adjacency.len();
        self.adjacency.resize_with(start + k, Vec::new);
        start..start + k
    }

    fn check(&self, v: NodeId) -> Result<()> {
        if v < self.adjacency.len() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                count: self.adjacency.len(),
            })
        }
    }

    /// Inserts edge `{u, v}`. Returns `false` for self-loops and edges that
    /// already exist.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Ok(false);
        }
        let pos_u = match self.adjacency[u].binary_search(&v) {
            Ok(_) => return Ok(false),
            Err(p) => p,
        };
        self.adjacency[u].insert(pos_u, v);
        let pos_v = self.adjacency[v]
            .binary_search(&u)
            .expect_err("adjacency symmetry violated");
        self.adjacency[v].insert(pos_v, u);
        self.edge_count += 1;
        Ok(true)
    }

    /// Deletes edge `{u, v}`. Returns `true` iff the edge existed.
    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        let Ok(pos_u) = self.adjacency[u].binary_search(&v) else {
            return Ok(false);
        };
        self.adjacency[u].remove(pos_u);
        let pos_v = self.adjacency[v]
            .binary_search(&u)
            .expect("adjacency symmetry violated");
        self.adjacency[v].remove(pos_v);
        self.edge_count -= 1;
        Ok(true)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|n| n.binary_search(&v).is_ok())
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check(v)?;
        Ok(self.adjacency[v].len())
    }

    /// Sorted neighbor list of `v`.
    ///
    /// Panics if `v` is out of range; use [`Graph::degree`] to validate
    /// untrusted ids first.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let start = nbrs.partition_point(|&v| v <= u);
            nbrs[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Node ids of the largest connected component (lowest-id component on
    /// ties), sorted ascending.
    pub fn largest_component(&self) -> Vec<NodeId> {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut best: Vec<NodeId> = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            let mut comp = vec![s];
            label[s] = s;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = s;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            if comp.len() > best.len() {
                best = comp;
            }
        }
        best.sort_unstable();
        best
    }
}

/// A graph read from an edge-list file together with the original labels of
/// its dense node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `labels[i]` is the id node `i` carried in the file.
    pub labels: Vec<u64>,
}

const NODES_HEADER: &str = "nodes=";

fn parse_nodes_header(comment: &str) -> Option<usize> {
    comment
        .trim_start_matches('#')
        .trim()
        .strip_prefix(NODES_HEADER)
        .and_then(|rest| rest.trim().parse().ok())
}

/// Reads whitespace-separated `u v` lines. Lines starting with `#` are
/// comments; a `# nodes=N` comment declares ids `0..N` (isolates included)
/// and disables compaction. Without it, the distinct ids seen are compacted
/// to `0..k` in ascending order, which is the identity for dense files.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut declared: Option<usize> = None;
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    let mut seen: BTreeSet<u64> = BTreeSet::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            if let Some(n) = parse_nodes_header(trimmed) {
                declared = Some(n);
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next_id = || -> Result<u64> {
            let tok = tokens
                .next()
                .ok_or(Error::MissingEndpoint { line: lineno })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                token: tok.to_string(),
            })
        };
        let u = next_id()?;
        let v = next_id()?;
        seen.insert(u);
        seen.insert(v);
        pairs.push((u, v));
    }

    let labels: Vec<u64> = match declared {
        Some(n) => {
            let max_plus_one = seen.last().map_or(0, |&m| m as usize + 1);
            (0..n.max(max_plus_one) as u64).collect()
        }
        None => seen.into_iter().collect(),
    };
    let dense = labels.iter().enumerate().all(|(i, &l)| i as u64 == l);

    let mut graph = Graph::new(labels.len());
    for (u, v) in pairs {
        let (a, b) = if dense {
            (u as usize, v as usize)
        } else {
            (
                labels.binary_search(&u).expect("label collected"),
                labels.binary_search(&v).expect("label collected"),
            )
        };
        graph.add_edge(a, b)?;
    }
    Ok(LoadedGraph { graph, labels })
}

/// Parses an edge list held in memory.
pub fn parse_edge_list(text: &str) -> Result<LoadedGraph> {
    read_edge_list(text.as_bytes())
}

/// Serializes `g` as a `# nodes=N` header followed by one sorted `u v` line
/// per edge with `u < v`.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + g.edge_count() * 12);
    let _ = writeln!(out, "# {NODES_HEADER}{}", g.node_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
