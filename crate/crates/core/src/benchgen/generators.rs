//! Random graph models. Each returns directed `(source, target)` pairs over
//! vertices `0..n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ingest::Triple;

pub type Edge = (u32, u32);

/// Preferential attachment: vertex `v` (for `v = 1..n`) links to `m` earlier
/// vertices, each drawn with probability proportional to its in-degree + 1.
/// Draws are with replacement, so there are exactly `m (n - 1)` edges.
pub fn gen_barabasi(n: usize, m: usize, seed: u64) -> Vec<Edge> {
    assert!(n >= 2 && m >= 1, "barabasi needs n >= 2 and m >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // one entry per vertex plus one per received edge
    let mut urn: Vec<u32> = Vec::with_capacity(n + m * n);
    urn.push(0);
    let mut edges = Vec::with_capacity(m * (n - 1));
    let mut drawn = Vec::with_capacity(m);
    for v in 1..n as u32 {
        drawn.clear();
        for _ in 0..m {
            drawn.push(urn[rng.random_range(0..urn.len())]);
        }
        for &t in &drawn {
            edges.push((v, t));
            urn.push(t);
        }
        urn.push(v);
    }
    edges
}

/// Every ordered pair `(u, v)` with `u != v` is an edge with probability `p`.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Vec<Edge> {
    assert!(p > 0.0 && p < 1.0, "edge probability must be in (0, 1)");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u != v && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Uniform attachment: vertex `v` links to `min(m, v)` distinct targets drawn
/// uniformly from `0..v`, so no pair is ever drawn twice.
pub fn gen_uniform_attachment(n: usize, m: usize, seed: u64) -> Vec<Edge> {
    assert!(n >= 2 && m >= 1, "uniform attachment needs n >= 2 and m >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let picked = rand::seq::index::sample(&mut rng, v, m.min(v));
        edges.extend(picked.into_iter().map(|t| (v as u32, t as u32)));
    }
    edges
}

/// Number of vertices with at least one incident edge.
pub fn non_isolated_count(edges: &[Edge], n: usize) -> usize {
    let mut seen = vec![false; n];
    for &(u, v) in edges {
        seen[u as usize] = true;
        seen[v as usize] = true;
    }
    seen.into_iter().filter(|&s| s).count()
}

/// Label every edge with a predicate drawn uniformly from `P0..P{s-1}`.
/// Vertices become `v{i}`. Isolated vertices do not appear.
pub fn assign_predicates(edges: &[Edge], predicate_set_size: usize, seed: u64) -> Vec<Triple> {
    assert!(predicate_set_size >= 1, "need at least one predicate");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    edges
        .iter()
        .map(|&(u, v)| {
            let p = rng.random_range(0..predicate_set_size);
            Triple::resource(format!("v{u}"), format!("P{p}"), format!("v{v}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barabasi_edge_counts() {
        assert_eq!(gen_barabasi(1000, 1, 3).len(), 999);
        assert_eq!(gen_barabasi(2, 1, 3), vec![(1, 0)]);
        assert_eq!(gen_barabasi(50, 3, 3).len(), 147);
        assert!(gen_barabasi(200, 1, 9).iter().all(|&(s, t)| t < s));
    }

    fn degrees(edges: &[Edge], n: usize) -> Vec<usize> {
        let mut d = vec![0; n];
        for &(u, v) in edges {
            d[u as usize] += 1;
            d[v as usize] += 1;
        }
        d.sort_unstable();
        d
    }

    fn heavy_tailed(edges: &[Edge], n: usize) -> bool {
        let d = degrees(edges, n);
        d[n - 1] > 20 * d[n / 2]
    }

    #[test]
    fn barabasi_degree_tail() {
        for seed in 0..20 {
            assert!(heavy_tailed(&gen_barabasi(10_000, 1, seed), 10_000), "seed {seed}");
        }
        // null model with a similar mean degree has no such tail
        assert!(!heavy_tailed(&gen_erdos_renyi(2000, 0.001, 1), 2000));
    }

    #[test]
    fn erdos_renyi_dense_limit() {
        // p = 0.999 on 90 ordered pairs: P(fewer than 80) is astronomically small
        for seed in 0..20 {
            assert!(gen_erdos_renyi(10, 0.999, seed).len() >= 80);
        }
        assert!(gen_erdos_renyi(10, 0.5, 1).iter().all(|&(u, v)| u != v));
    }

    #[test]
    fn generators_are_seeded() {
        assert_eq!(gen_erdos_renyi(60, 0.3, 5), gen_erdos_renyi(60, 0.3, 5));
        assert_eq!(gen_barabasi(300, 2, 5), gen_barabasi(300, 2, 5));
        assert_eq!(gen_uniform_attachment(300, 4, 5), gen_uniform_attachment(300, 4, 5));
        assert_ne!(gen_uniform_attachment(300, 4, 5), gen_uniform_attachment(300, 4, 6));
    }

    #[test]
    fn uniform_attachment_shape() {
        assert_eq!(gen_uniform_attachment(100, 1, 2).len(), 99);
        let e = gen_uniform_attachment(100, 10, 2);
        // 1 + 2 + ... + 9 for the first nine vertices, then 10 each
        assert_eq!(e.len(), 45 + 90 * 10);
        assert!(non_isolated_count(&e, 100) >= 90);
        let mut sorted = e.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), e.len(), "duplicates must be collapsed");
    }

    #[test]
    fn predicates() {
        let edges = gen_barabasi(50, 1, 1);
        assert!(assign_predicates(&edges, 1, 0).iter().all(|t| t.predicate == "P0"));
        assert!(assign_predicates(&[], 10, 0).is_empty());
        let edges: Vec<Edge> = (0..100_000).map(|i| (i, i + 1)).collect();
        let mut counts = [0u64; 10];
        for t in assign_predicates(&edges, 10, 4) {
            counts[t.predicate[1..].parse::<usize>().unwrap()] += 1;
        }
        let sigma = (1e5f64 * 0.1 * 0.9).sqrt();
        assert!(counts.iter().all(|&c| (c as f64 - 1e4).abs() < 5.0 * sigma), "{counts:?}");
    }
}
