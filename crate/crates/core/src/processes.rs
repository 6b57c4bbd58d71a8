//! Network-formation processes and the mixture synthesis loop.
//!
//! Four processes grow or reshape a graph:
//!
//! * **TRA** appends a ring lattice of `n` nodes with degree `K` and rewires
//!   each lattice edge to a random existing node with probability
//!   `p_rewiring` (clustering plus random long-range links).
//! * **PA** attaches `n` newcomers, each to `m` distinct nodes chosen with
//!   probability proportional to degree.
//! * **MA** attaches each newcomer to the neighbors of a random node, each
//!   with probability `p_copying` (community structure).
//! * **ADM** toggles `n_adm` random node pairs, keeping only toggles that move
//!   the degree assortativity towards a target value.
//!
//! [`synthesize`] starts from a small clique and repeatedly picks one process
//! according to the mixture probabilities until the requested size is reached.

use std::fmt;
use std::ops::Range;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::metrics::DegreeMoments;

/// Size of the complete graph every synthesis starts from.
pub const SEED_NODES: usize = 4;

/// At most this many ADM steps may run back to back before a node-adding
/// process is forced.
pub const MAX_CONSECUTIVE_ADM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProcessKind {
    Tra,
    Pa,
    Ma,
    Adm,
}

impl fmt::Display for ProcessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProcessKind::Tra => "TRA",
            ProcessKind::Pa => "PA",
            ProcessKind::Ma => "MA",
            ProcessKind::Adm => "ADM",
        })
    }
}

/// Process probabilities and parameters of one mixture model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureConfig {
    /// Nodes added per growth step.
    pub n: usize,
    pub p_pa: f64,
    pub p_tra: f64,
    pub p_ma: f64,
    pub p_adm: f64,
    /// Attachments per PA newcomer.
    pub m: usize,
    /// TRA lattice degree (even).
    #[serde(rename = "K")]
    pub k: usize,
    pub p_rewiring: f64,
    pub p_copying: f64,
    /// Pairs tried per ADM step.
    pub n_adm: usize,
    pub target_assortativity: f64,
}

fn check_unit(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} = {p} is outside [0, 1]")))
    }
}

impl MixtureConfig {
    pub fn probabilities(&self) -> [f64; 4] {
        [self.p_pa, self.p_tra, self.p_ma, self.p_adm]
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("p_pa", self.p_pa),
            ("p_tra", self.p_tra),
            ("p_ma", self.p_ma),
            ("p_adm", self.p_adm),
            ("p_rewiring", self.p_rewiring),
            ("p_copying", self.p_copying),
        ] {
            check_unit(name, p)?;
        }
        let sum: f64 = self.probabilities().iter().sum();
        if sum <= 0.0 || sum > 1.0 + 1e-9 {
            return Err(Error::Config(format!(
                "process probabilities sum to {sum}, need (0, 1]"
            )));
        }
        if self.m < 1 {
            return Err(Error::Config("m must be at least 1".into()));
        }
        if self.k < 2 || !self.k.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "K = {} must be even and >= 2",
                self.k
            )));
        }
        if self.n < self.k + 1 {
            return Err(Error::Config(format!(
                "n = {} must exceed K = {}",
                self.n, self.k
            )));
        }
        if self.n_adm < 1 {
            return Err(Error::Config("n_adm must be at least 1".into()));
        }
        if !(-1.0..=1.0).contains(&self.target_assortativity) {
            return Err(Error::Config(format!(
                "target_assortativity = {} is outside [-1, 1]",
                self.target_assortativity
            )));
        }
        Ok(())
    }
}

/// The starting graph of every synthesis: `K4`.
pub fn seed_graph() -> Graph {
    Graph::complete(SEED_NODES)
}

/// Appends `n` nodes joined as a ring lattice in which every node links to
/// its `k/2` nearest ring neighbors on each side. Returns the lattice edges
/// as `(lower, higher)` pairs in construction order.
pub fn add_ring_lattice(g: &mut Graph, n: usize, k: usize) -> Result<Vec<(NodeId, NodeId)>> {
    if !k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("lattice degree {k} is odd")));
    }
    if k >= n {
        return Err(Error::InvalidArgument(format!(
            "lattice degree {k} needs more than {n} nodes"
        )));
    }
    let Range { start, .. } = g.add_nodes(n);
    let mut edges = Vec::with_capacity(n * k / 2);
    for i in 0..n {
        for j in 1..=k / 2 {
            let a = start + i;
            let b = start + (i + j) % n;
            let e = (a.min(b), a.max(b));
            if g.add_edge(e.0, e.1)? {
                edges.push(e);
            }
        }
    }
    Ok(edges)
}

/// With probability `p`, moves the lower endpoint of each listed edge to a
/// node drawn uniformly from the whole graph. Moves that would create a
/// self-loop or a duplicate edge are skipped.
pub fn rewire_edges<R: Rng + ?Sized>(
    g: &mut Graph,
    edges: &[(NodeId, NodeId)],
    p: f64,
    rng: &mut R,
) -> usize {
    let mut moved = 0;
    if p <= 0.0 {
        return 0;
    }
    let n = g.node_count();
    for &(low, high) in edges {
        if !rng.random_bool(p) {
            continue;
        }
        let t = rng.random_range(0..n);
        if t == high || g.has_edge(t, high) {
            continue;
        }
        g.remove_edge(low, high).expect("edge ids valid");
        g.add_edge(t, high).expect("edge ids valid");
        moved += 1;
    }
    moved
}

/// TRA: append an `n`-node ring lattice of degree `k`, then rewire.
pub fn tra_step<R: Rng + ?Sized>(
    g: &mut Graph,
    n: usize,
    k: usize,
    p_rewiring: f64,
    rng: &mut R,
) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("lattice degree {k} < 2")));
    }
    let edges = add_ring_lattice(g, n, k)?;
    rewire_edges(g, &edges, p_rewiring, rng);
    Ok(())
}

/// Degree-proportional sampler. Every node appears `max(degree, 1)` times,
/// so isolated nodes stay reachable with weight 1.
#[derive(Debug, Clone)]
pub(crate) struct AttachmentPool {
    slots: Vec<NodeId>,
}

impl AttachmentPool {
    pub(crate) fn of(g: &Graph) -> Self {
        let mut slots = Vec::with_capacity(2 * g.edge_count() + g.node_count());
        for v in 0..g.node_count() {
            let w = g.neighbors(v).len().max(1);
            slots.extend(std::iter::repeat_n(v, w));
        }
        Self { slots }
    }

    /// Draws `count` distinct nodes, each draw proportional to weight among
    /// the nodes not yet drawn.
    pub(crate) fn sample_distinct<R: Rng + ?Sized>(
        &self,
        count: usize,
        rng: &mut R,
        out: &mut Vec<NodeId>,
    ) {
        out.clear();
        while out.len() < count {
            let v = self.slots[rng.random_range(0..self.slots.len())];
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }

    /// Records a new edge `{newcomer, target}` where `target` had
    /// `target_degree_before` neighbors.
    fn note_attachment(&mut self, target: NodeId, target_degree_before: usize) {
        if target_degree_before >= 1 {
            self.slots.push(target);
        }
    }

    fn note_newcomer(&mut self, v: NodeId, degree: usize) {
        self.slots.extend(std::iter::repeat_n(v, degree.max(1)));
    }
}

/// PA: attach `n` newcomers one at a time, each to `min(m, existing nodes)`
/// distinct nodes sampled proportionally to degree.
pub fn pa_step<R: Rng + ?Sized>(g: &mut Graph, n: usize, m: usize, rng: &mut R) {
    let mut pool = AttachmentPool::of(g);
    let mut targets = Vec::with_capacity(m);
    for _ in 0..n {
        let existing = g.node_count();
        let v = g.add_node();
        if existing == 0 {
            pool.note_newcomer(v, 0);
            continue;
        }
        pool.sample_distinct(m.min(existing), rng, &mut targets);
        for &t in &targets {
            let before = g.neighbors(t).len();
            g.add_edge(v, t).expect("valid ids");
            pool.note_attachment(t, before);
        }
        pool.note_newcomer(v, targets.len());
    }
}

/// MA: each newcomer picks a uniform random existing node `x` and links to
/// each of its neighbors with probability `p_copying`. It links to `x`
/// itself when `x` is isolated or when no neighbor was copied.
pub fn ma_step<R: Rng + ?Sized>(g: &mut Graph, n: usize, p_copying: f64, rng: &mut R) {
    let mut chosen = Vec::new();
    for _ in 0..n {
        let existing = g.node_count();
        let v = g.add_node();
        if existing == 0 {
            continue;
        }
        let x = rng.random_range(0..existing);
        chosen.clear();
        chosen.extend(
            g.neighbors(x)
                .iter()
                .copied()
                .filter(|_| rng.random_bool(p_copying)),
        );
        if chosen.is_empty() {
            chosen.push(x);
        }
        for &w in &chosen {
            g.add_edge(v, w).expect("valid ids");
        }
    }
}

/// ADM: `n_adm` times, toggle the edge between a uniform random node pair
/// and keep the toggle only if it strictly reduces
/// `|assortativity − target|`. Removals that would isolate a node are not
/// attempted. Returns the number of committed toggles.
pub fn adm_step<R: Rng + ?Sized>(g: &mut Graph, n_adm: usize, target: f64, rng: &mut R) -> usize {
    let n = g.node_count();
    if n < 2 {
        return 0;
    }
    let mut moments = DegreeMoments::of(g);
    let mut gap = (moments.assortativity().value - target).abs();
    let mut committed = 0;
    for _ in 0..n_adm {
        let u = rng.random_range(0..n);
        let mut v = rng.random_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let present = g.has_edge(u, v);
        if present && (g.neighbors(u).len() == 1 || g.neighbors(v).len() == 1) {
            continue;
        }
        let next = moments.after_toggle(g, u, v);
        let next_gap = (next.assortativity().value - target).abs();
        if next_gap < gap {
            if present {
                g.remove_edge(u, v).expect("valid ids");
            } else {
                g.add_edge(u, v).expect("valid ids");
            }
            moments = next;
            gap = next_gap;
            committed += 1;
        }
    }
    committed
}

const PROCESS_ORDER: [ProcessKind; 4] = [
    ProcessKind::Pa,
    ProcessKind::Tra,
    ProcessKind::Ma,
    ProcessKind::Adm,
];

fn draw_weighted<R: Rng + ?Sized>(
    weights: &[f64],
    kinds: &[ProcessKind],
    rng: &mut R,
) -> Option<ProcessKind> {
    let total: f64 = weights.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return None;
    }
    let mut u = rng.random::<f64>() * total;
    for (&w, &kind) in weights.iter().zip(kinds) {
        if u < w {
            return Some(kind);
        }
        u -= w;
    }
    // rounding left u at the very top
    weights
        .iter()
        .zip(kinds)
        .rev()
        .find(|(&w, _)| w > 0.0)
        .map(|(_, &k)| k)
}

/// Picks a process with probability proportional to its mixture weight.
/// Weights summing to less than one are renormalized.
pub fn select_process<R: Rng + ?Sized>(cfg: &MixtureConfig, rng: &mut R) -> Result<ProcessKind> {
    draw_weighted(&cfg.probabilities(), &PROCESS_ORDER, rng)
        .ok_or_else(|| Error::Config("all process probabilities are zero".into()))
}

fn select_growth_process<R: Rng + ?Sized>(cfg: &MixtureConfig, rng: &mut R) -> ProcessKind {
    let kinds = &PROCESS_ORDER[..3];
    draw_weighted(&[cfg.p_pa, cfg.p_tra, cfg.p_ma], kinds, rng)
        .or_else(|| draw_weighted(&[1.0, 1.0, 1.0], kinds, rng))
        .expect("uniform weights are positive")
}

/// TRA on a partial budget: the lattice degree shrinks to fit `count`
/// nodes; when no lattice fits, each newcomer links to one random node.
fn tra_partial<R: Rng + ?Sized>(g: &mut Graph, count: usize, cfg: &MixtureConfig, rng: &mut R) {
    let largest_even = count.saturating_sub(1) & !1;
    let k = cfg.k.min(largest_even);
    if k >= 2 {
        tra_step(g, count, k, cfg.p_rewiring, rng).expect("lattice fits");
    } else {
        for _ in 0..count {
            let existing = g.node_count();
            let v = g.add_node();
            let t = rng.random_range(0..existing);
            g.add_edge(v, t).expect("valid ids");
        }
    }
}

/// Grows a graph of exactly `desired_nodes` nodes from [`seed_graph`].
///
/// TRA, PA and MA each add `min(n, remaining)` nodes. ADM adds none and is
/// limited to [`MAX_CONSECUTIVE_ADM`] back-to-back selections.
pub fn synthesize<R: Rng + ?Sized>(
    cfg: &MixtureConfig,
    desired_nodes: usize,
    rng: &mut R,
) -> Result<Graph> {
    cfg.validate()?;
    if desired_nodes < SEED_NODES {
        return Err(Error::InvalidArgument(format!(
            "desired size {desired_nodes} is below the seed size {SEED_NODES}"
        )));
    }
    let mut g = seed_graph();
    let mut adm_run = 0;
    while g.node_count() < desired_nodes {
        let mut kind = select_process(cfg, rng)?;
        if kind == ProcessKind::Adm && adm_run >= MAX_CONSECUTIVE_ADM {
            kind = select_growth_process(cfg, rng);
        }
        let count = cfg.n.min(desired_nodes - g.node_count());
        match kind {
            ProcessKind::Adm => {
                adm_step(&mut g, cfg.n_adm, cfg.target_assortativity, rng);
                adm_run += 1;
                continue;
            }
            ProcessKind::Tra => tra_partial(&mut g, count, cfg, rng),
            ProcessKind::Pa => pa_step(&mut g, count, cfg.m, rng),
            ProcessKind::Ma => ma_step(&mut g, count, cfg.p_copying, rng),
        }
        adm_run = 0;
    }
    Ok(g)
}
