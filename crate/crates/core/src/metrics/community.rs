//! Newman modularity and a seeded Louvain-style maximizer.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Community label per node.
pub type Partition = Vec<usize>;

/// `Q = Σ_c (e_cc − a_c²)` for the given node → community assignment.
/// A graph without edges has modularity 0.
pub fn modularity_of(g: &Graph, partition: &[usize]) -> Result<f64> {
    if partition.len() != g.node_count() {
        return Err(Error::PartitionSize {
            expected: g.node_count(),
            got: partition.len(),
        });
    }
    let m = g.edge_count() as f64;
    if m == 0.0 {
        return Ok(0.0);
    }
    // community -> (intra edges, degree sum)
    let mut stats: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (v, &c) in partition.iter().enumerate() {
        stats.entry(c).or_default().1 += g.neighbors(v).len();
    }
    for (u, v) in g.edges() {
        if partition[u] == partition[v] {
            stats.get_mut(&partition[u]).expect("community present").0 += 1;
        }
    }
    Ok(stats
        .values()
        .map(|&(intra, deg)| {
            let a = deg as f64 / (2.0 * m);
            intra as f64 / m - a * a
        })
        .sum())
}

/// Weighted graph used while aggregating communities.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    self_loops: Vec<f64>,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        Self {
            adj: (0..g.node_count())
                .map(|v| g.neighbors(v).iter().map(|&w| (w, 1.0)).collect())
                .collect(),
            self_loops: vec![0.0; g.node_count()],
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn strength(&self, v: usize) -> f64 {
        self.adj[v].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.self_loops[v]
    }

    /// Local moving phase. Returns the dense community of each node and
    /// whether any node changed community.
    fn local_moves(&self, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
        const MIN_GAIN: f64 = 1e-12;
        const MAX_SWEEPS: usize = 1000;

        let n = self.len();
        let strength: Vec<f64> = (0..n).map(|v| self.strength(v)).collect();
        let two_m: f64 = strength.iter().sum();
        let mut comm: Vec<usize> = (0..n).collect();
        let mut total = strength.clone();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);

        let mut links = vec![0.0; n];
        let mut seen = vec![false; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut any_move = false;

        for _ in 0..MAX_SWEEPS {
            let mut moved = false;
            for &v in &order {
                let home = comm[v];
                let k = strength[v];
                for &(w, weight) in &self.adj[v] {
                    let c = comm[w];
                    if !seen[c] {
                        seen[c] = true;
                        touched.push(c);
                    }
                    links[c] += weight;
                }
                total[home] -= k;
                let mut best = home;
                let mut best_gain = links[home] - total[home] * k / two_m;
                for &c in &touched {
                    let gain = links[c] - total[c] * k / two_m;
                    if gain > best_gain + MIN_GAIN {
                        best = c;
                        best_gain = gain;
                    }
                }
                total[best] += k;
                comm[v] = best;
                if best != home {
                    moved = true;
                    any_move = true;
                }
                for c in touched.drain(..) {
                    links[c] = 0.0;
                    seen[c] = false;
                }
            }
            if !moved {
                break;
            }
        }
        (relabel(&comm), any_move)
    }

    fn aggregate(&self, comm: &[usize]) -> Level {
        let k = comm.iter().max().map_or(0, |&c| c + 1);
        let mut weights: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); k];
        let mut self_loops = vec![0.0; k];
        for v in 0..self.len() {
            let cv = comm[v];
            self_loops[cv] += self.self_loops[v];
            for &(w, weight) in &self.adj[v] {
                let cw = comm[w];
                if cv == cw {
                    // seen from both endpoints
                    self_loops[cv] += weight / 2.0;
                } else {
                    *weights[cv].entry(cw).or_insert(0.0) += weight;
                }
            }
        }
        Level {
            adj: weights
                .into_iter()
                .map(|m| m.into_iter().collect())
                .collect(),
            self_loops,
        }
    }
}

/// Relabels communities densely in order of first appearance.
fn relabel(comm: &[usize]) -> Vec<usize> {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    comm.iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

/// Greedy multi-level modularity maximization. Node visiting order is
/// shuffled from `seed`, so the result is a pure function of `(g, seed)`.
/// The returned Q is never below that of the single-community partition.
pub fn best_partition_modularity(g: &Graph, seed: u64) -> (Partition, f64) {
    let n = g.node_count();
    if n == 0 {
        return (Vec::new(), 0.0);
    }
    if g.edge_count() == 0 {
        return (vec![0; n], 0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut membership: Vec<usize> = (0..n).collect();
    let mut level = Level::from_graph(g);
    loop {
        let (comm, moved) = level.local_moves(&mut rng);
        if !moved {
            break;
        }
        for c in membership.iter_mut() {
            *c = comm[*c];
        }
        level = level.aggregate(&comm);
        if level.len() == 1 {
            break;
        }
    }
    let membership = relabel(&membership);
    let q = modularity_of(g, &membership).expect("partition covers graph");
    if q < 0.0 {
        (vec![0; n], 0.0)
    } else {
        (membership, q)
    }
}
