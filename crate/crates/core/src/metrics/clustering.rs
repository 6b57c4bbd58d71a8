use crate::graph::Graph;

use super::Measured;

/// Number of triangles through each node.
pub fn triangles_per_node(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut stamp = vec![usize::MAX; n];
    let mut counts = vec![0usize; n];
    for (v, count) in counts.iter_mut().enumerate() {
        let nbrs = g.neighbors(v);
        if nbrs.len() < 2 {
            continue;
        }
        for &u in nbrs {
            stamp[u] = v;
        }
        let mut links = 0;
        for &u in nbrs {
            links += g.neighbors(u).iter().filter(|&&w| stamp[w] == v).count();
        }
        // each neighbor-neighbor edge was seen from both ends
        *count = links / 2;
    }
    counts
}

/// Local clustering coefficient of every node; nodes of degree < 2 get 0.
pub fn local_clustering(g: &Graph) -> Vec<f64> {
    triangles_per_node(g)
        .into_iter()
        .enumerate()
        .map(|(v, t)| {
            let d = g.neighbors(v).len();
            if d < 2 {
                0.0
            } else {
                2.0 * t as f64 / (d * (d - 1)) as f64
            }
        })
        .collect()
}

/// Mean local clustering over all nodes. An empty graph yields a degenerate 0.
pub fn average_clustering(g: &Graph) -> Measured {
    if g.is_empty() {
        return Measured::degenerate();
    }
    let local = local_clustering(g);
    Measured::ok(local.iter().sum::<f64>() / local.len() as f64)
}

/// Global triangle ratio: 3 × triangles / connected triples.
pub fn transitivity(g: &Graph) -> f64 {
    let tri: usize = triangles_per_node(g).iter().sum();
    let triples: usize = g
        .degrees()
        .into_iter()
        .map(|d| d * d.saturating_sub(1) / 2)
        .sum();
    if triples == 0 {
        0.0
    } else {
        // `tri` already counts each triangle three times (once per corner)
        tri as f64 / triples as f64
    }
}
