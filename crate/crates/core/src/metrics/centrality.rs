use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

const EIGENVECTOR_TOLERANCE: f64 = 1e-8;
const EIGENVECTOR_MAX_ITERATIONS: usize = 1000;
const PAGERANK_TOLERANCE: f64 = 1e-12;
const PAGERANK_MAX_ITERATIONS: usize = 1000;
pub const PAGERANK_DAMPING: f64 = 0.85;

fn bfs_distances(g: &Graph, source: usize, dist: &mut [usize], queue: &mut VecDeque<usize>) {
    dist.fill(usize::MAX);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

/// Closeness centrality with the Wasserman–Faust correction for
/// disconnected graphs; values lie in `[0, 1]`.
pub fn closeness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    (0..n)
        .map(|v| {
            bfs_distances(g, v, &mut dist, &mut queue);
            let (reach, total) = dist
                .iter()
                .filter(|&&d| d != usize::MAX)
                .fold((0usize, 0usize), |(r, t), &d| (r + 1, t + d));
            if total == 0 || n < 2 {
                0.0
            } else {
                let r = (reach - 1) as f64;
                (r / total as f64) * (r / (n - 1) as f64)
            }
        })
        .collect()
}

/// Exact betweenness by Brandes accumulation, normalized by the number of
/// node pairs not involving the node, `(n−1)(n−2)/2`.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut bc = vec![0.0; n];
    if n < 3 {
        return bc;
    }
    let mut stack = Vec::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut queue = VecDeque::with_capacity(n);

    for s in 0..n {
        stack.clear();
        for p in preds.iter_mut() {
            p.clear();
        }
        sigma.fill(0.0);
        dist.fill(usize::MAX);
        delta.fill(0.0);
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                bc[w] += delta[w];
            }
        }
    }
    // every unordered pair was accumulated from both endpoints
    let scale = 1.0 / ((n - 1) * (n - 2)) as f64;
    bc.iter_mut().for_each(|b| *b *= scale);
    bc
}

/// Principal eigenvector of the adjacency matrix restricted to the largest
/// connected component (unit L2 norm there, zero elsewhere). Iterates on
/// `A + I`, which has the same eigenvectors but converges on bipartite
/// components.
pub fn eigenvector(g: &Graph) -> Result<Vec<f64>> {
    let n = g.node_count();
    let mut out = vec![0.0; n];
    let component = g.largest_component();
    if component.is_empty() {
        return Ok(out);
    }
    let mut local = vec![usize::MAX; n];
    for (i, &v) in component.iter().enumerate() {
        local[v] = i;
    }
    let size = component.len();
    let mut x = vec![1.0 / (size as f64).sqrt(); size];
    let mut next = vec![0.0; size];
    for _ in 0..EIGENVECTOR_MAX_ITERATIONS {
        for (i, &v) in component.iter().enumerate() {
            next[i] = x[i] + g.neighbors(v).iter().map(|&w| x[local[w]]).sum::<f64>();
        }
        let norm = next.iter().map(|a| a * a).sum::<f64>().sqrt();
        next.iter_mut().for_each(|a| *a /= norm);
        let change: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if change < size as f64 * EIGENVECTOR_TOLERANCE {
            for (i, &v) in component.iter().enumerate() {
                out[v] = x[i];
            }
            return Ok(out);
        }
    }
    Err(Error::NoConvergence {
        iterations: EIGENVECTOR_MAX_ITERATIONS,
    })
}

/// PageRank with damping 0.85. Isolated nodes spread their mass uniformly.
/// The result sums to 1.
pub fn pagerank(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let nf = n as f64;
    let mut x = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    for _ in 0..PAGERANK_MAX_ITERATIONS {
        let dangling: f64 = (0..n)
            .filter(|&v| g.neighbors(v).is_empty())
            .map(|v| x[v])
            .sum();
        let base = (1.0 - PAGERANK_DAMPING) / nf + PAGERANK_DAMPING * dangling / nf;
        for (v, slot) in next.iter_mut().enumerate() {
            *slot = base
                + PAGERANK_DAMPING
                    * g.neighbors(v)
                        .iter()
                        .map(|&w| x[w] / g.neighbors(w).len() as f64)
                        .sum::<f64>();
        }
        let change: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if change < nf * PAGERANK_TOLERANCE {
            break;
        }
    }
    let total: f64 = x.iter().sum();
    x.iter_mut().for_each(|a| *a /= total);
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn pagerank_symmetric_graph_is_uniform() {
        for v in pagerank(&Graph::complete(4)) {
            assert!((v - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn pagerank_sums_to_one_with_isolates() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2)]).unwrap();
        let pr = pagerank(&g);
        assert!((pr.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(pr.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn betweenness_of_path_center() {
        assert_eq!(betweenness(&p3()), vec![0.0, 1.0, 0.0]);
        let star = Graph::from_edges(5, (1..5).map(|l| (0, l))).unwrap();
        assert!((betweenness(&star)[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closeness_values() {
        let c = closeness(&p3());
        assert!((c[1] - 1.0).abs() < 1e-12);
        assert!((c[0] - 2.0 / 3.0).abs() < 1e-12);
        let isolated = closeness(&Graph::from_edges(3, [(0, 1)]).unwrap());
        assert_eq!(isolated[2], 0.0);
        // reachable-fraction correction: 1/1 * 1/2
        assert!((isolated[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn eigenvector_star_and_bipartite() {
        let star = Graph::from_edges(5, (1..5).map(|l| (0, l))).unwrap();
        let e = eigenvector(&star).unwrap();
        // hub : leaf = sqrt(4) : 1
        assert!((e[0] / e[1] - 2.0).abs() < 1e-6);
        let norm: f64 = e.iter().map(|a| a * a).sum();
        assert!((norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn eigenvector_zero_outside_largest_component() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (3, 4), (4, 2)]).unwrap();
        let e = eigenvector(&g).unwrap();
        assert_eq!(&e[0..2], &[0.0, 0.0]);
        assert_eq!(e[5], 0.0);
        assert!((e[2] - 1.0 / 3f64.sqrt()).abs() < 1e-6);
    }
}
