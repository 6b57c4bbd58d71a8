//! Degree-distribution quantification.
//!
//! The degree range `[d_min, d_max]` is split at `μ − σ`, `μ` and `μ + σ`
//! (clamped into the range) into four regions, each of which is bisected.
//! The feature vector is the fraction of nodes falling in each of the eight
//! intervals. Intervals are left-closed; the last one is closed. Collapsed
//! intervals (zero width) never receive mass, so a value sitting on a run of
//! equal boundaries lands in the right-most interval starting there.

use crate::graph::Graph;

pub const DDQC_BINS: usize = 8;

/// Interval boundaries `e_0 ≤ … ≤ e_8` for a degree sequence.
pub fn ddqc_boundaries(degrees: &[usize]) -> [f64; DDQC_BINS + 1] {
    let lo = degrees.iter().copied().min().unwrap_or(0) as f64;
    let hi = degrees.iter().copied().max().unwrap_or(0) as f64;
    // exact integer moments, so boundaries depend only on the degree distribution
    let n = degrees.len() as u128;
    let s1: u128 = degrees.iter().map(|&d| d as u128).sum();
    let s2: u128 = degrees.iter().map(|&d| (d as u128).pow(2)).sum();
    let (mean, var) = if n == 0 {
        (0.0, 0.0)
    } else {
        (
            s1 as f64 / n as f64,
            (n * s2 - s1 * s1) as f64 / (n * n) as f64,
        )
    };
    let sd = var.sqrt();
    let cuts = [
        lo,
        (mean - sd).clamp(lo, hi),
        mean.clamp(lo, hi),
        (mean + sd).clamp(lo, hi),
        hi,
    ];
    let mut edges = [0.0; DDQC_BINS + 1];
    for r in 0..4 {
        edges[2 * r] = cuts[r];
        edges[2 * r + 1] = 0.5 * (cuts[r] + cuts[r + 1]);
    }
    edges[DDQC_BINS] = hi;
    edges
}

fn bin_of(value: f64, edges: &[f64; DDQC_BINS + 1]) -> usize {
    // largest i < 8 with e_i <= value
    (0..DDQC_BINS)
        .rev()
        .find(|&i| edges[i] <= value)
        .unwrap_or(0)
}

/// Probability mass of the degree sequence in each of the eight intervals.
/// An empty graph yields all zeros.
pub fn ddqc_features(g: &Graph) -> [f64; DDQC_BINS] {
    let degrees = g.degrees();
    let mut mass = [0.0; DDQC_BINS];
    if degrees.is_empty() {
        return mass;
    }
    let edges = ddqc_boundaries(&degrees);
    let mut counts = [0usize; DDQC_BINS];
    for &d in &degrees {
        counts[bin_of(d as f64, &edges)] += 1;
    }
    for (m, c) in mass.iter_mut().zip(counts) {
        *m = c as f64 / degrees.len() as f64;
    }
    mass
}

pub fn ddqc_l1(a: &[f64; DDQC_BINS], b: &[f64; DDQC_BINS]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// L1 distance between the two feature vectors; lies in `[0, 2]`.
pub fn ddqc_distance(g1: &Graph, g2: &Graph) -> f64 {
    ddqc_l1(&ddqc_features(g1), &ddqc_features(g2))
}
