//! Classical seeded generators used to manufacture artificial targets.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::processes::{add_ring_lattice, pa_step, rewire_edges};

/// Barabási–Albert growth from an `m`-node clique; every newcomer links to
/// `m` distinct nodes chosen proportionally to degree.
pub fn generate_ba<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    if m < 1 || n <= m {
        return Err(Error::InvalidArgument(format!(
            "BA needs n > m >= 1, got n = {n}, m = {m}"
        )));
    }
    let mut g = Graph::complete(m);
    pa_step(&mut g, n - m, m, rng);
    Ok(g)
}

/// Erdős–Rényi `G(n, p)`.
pub fn generate_er<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if n < 1 || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "ER needs n >= 1 and p in [0, 1], got n = {n}, p = {p}"
        )));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Watts–Strogatz: ring lattice of degree `k`, then each lattice edge is
/// rewired with probability `p` (same rule as the TRA process).
pub fn generate_ws<R: Rng + ?Sized>(n: usize, k: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if k < 2 || !k.is_multiple_of(2) || k >= n {
        return Err(Error::InvalidArgument(format!(
            "WS needs an even K with 2 <= K < n, got n = {n}, K = {k}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("WS rewiring p = {p}")));
    }
    let mut g = Graph::new(0);
    let edges = add_ring_lattice(&mut g, n, k)?;
    rewire_edges(&mut g, &edges, p, rng);
    Ok(g)
}

/// A baseline model and its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum BaselineSpec {
    Ba { n: usize, m: usize },
    Er { n: usize, p: f64 },
    Ws { n: usize, k: usize, p: f64 },
}

impl BaselineSpec {
    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Graph> {
        match *self {
            BaselineSpec::Ba { n, m } => generate_ba(n, m, rng),
            BaselineSpec::Er { n, p } => generate_er(n, p, rng),
            BaselineSpec::Ws { n, k, p } => generate_ws(n, k, p, rng),
        }
    }
}
