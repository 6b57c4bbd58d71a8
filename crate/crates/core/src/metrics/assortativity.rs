//! Degree assortativity.
//!
//! The coefficient is computed from four integer moments of the edge-degree
//! distribution, which keeps the computation exact and lets edge toggles be
//! evaluated in `O(deg u + deg v)` without touching the graph.

use crate::graph::{Graph, NodeId};

use super::Measured;

/// Integer moments sufficient for the degree correlation coefficient:
/// edge count `M`, `Σ_v d_v²`, `Σ_v d_v³` and `Σ_{uv ∈ E} d_u d_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeMoments {
    edges: i128,
    sum_sq: i128,
    sum_cube: i128,
    sum_prod: i128,
}

fn neighbor_degree_sum(g: &Graph, v: NodeId, skip: Option<NodeId>) -> i128 {
    g.neighbors(v)
        .iter()
        .filter(|&&w| Some(w) != skip)
        .map(|&w| g.neighbors(w).len() as i128)
        .sum()
}

impl DegreeMoments {
    pub fn of(g: &Graph) -> Self {
        let mut m = Self {
            edges: g.edge_count() as i128,
            sum_sq: 0,
            sum_cube: 0,
            sum_prod: 0,
        };
        for v in 0..g.node_count() {
            let d = g.neighbors(v).len() as i128;
            m.sum_sq += d * d;
            m.sum_cube += d * d * d;
        }
        for (u, v) in g.edges() {
            m.sum_prod += (g.neighbors(u).len() * g.neighbors(v).len()) as i128;
        }
        m
    }

    /// Moments the graph would have after toggling `{u, v}` (adding it when
    /// absent, removing it when present). `g` is the pre-toggle graph.
    pub fn after_toggle(&self, g: &Graph, u: NodeId, v: NodeId) -> Self {
        let du = g.neighbors(u).len() as i128;
        let dv = g.neighbors(v).len() as i128;
        let mut next = *self;
        if g.has_edge(u, v) {
            next.edges -= 1;
            next.sum_sq -= (2 * du - 1) + (2 * dv - 1);
            next.sum_cube -= (3 * du * du - 3 * du + 1) + (3 * dv * dv - 3 * dv + 1);
            next.sum_prod -=
                neighbor_degree_sum(g, u, Some(v)) + neighbor_degree_sum(g, v, Some(u)) + du * dv;
        } else {
            next.edges += 1;
            next.sum_sq += (2 * du + 1) + (2 * dv + 1);
            next.sum_cube += (3 * du * du + 3 * du + 1) + (3 * dv * dv + 3 * dv + 1);
            next.sum_prod += neighbor_degree_sum(g, u, None)
                + neighbor_degree_sum(g, v, None)
                + (du + 1) * (dv + 1);
        }
        next
    }

    pub fn assortativity(&self) -> Measured {
        if self.edges == 0 {
            return Measured::degenerate();
        }
        let num = 4 * self.edges * self.sum_prod - self.sum_sq * self.sum_sq;
        let den = 2 * self.edges * self.sum_cube - self.sum_sq * self.sum_sq;
        if den == 0 {
            return Measured::degenerate();
        }
        Measured::ok(num as f64 / den as f64)
    }
}

/// Pearson correlation of the degrees at either end of an edge, taken over
/// both orientations. Graphs with no edges or zero degree variance yield a
/// degenerate 0.
pub fn assortativity(g: &Graph) -> Measured {
    DegreeMoments::of(g).assortativity()
}
