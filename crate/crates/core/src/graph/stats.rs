//! Summary statistics: degree, density and average betweenness.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use super::Graph;
use crate::{Error, Result};

/// Betweenness is only computed up to this many entity vertices.
pub const BETWEENNESS_VERTEX_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    /// Undirected convention, `2E / V`.
    pub avg_degree: f64,
    pub avg_betweenness: Option<f64>,
    /// `E / (V (V - 1))`; may exceed 1 for multigraphs.
    pub density: f64,
}

/// Statistics over the entity vertices of `graph`.
pub fn compute_stats(graph: &Graph, with_betweenness: bool) -> Result<GraphStats> {
    let v = graph.entity_count();
    let e = graph.edge_count();
    let avg_betweenness = if with_betweenness {
        if v > BETWEENNESS_VERTEX_LIMIT {
            return Err(Error::BetweennessGuard { vertices: v, limit: BETWEENNESS_VERTEX_LIMIT });
        }
        let scores = betweenness(graph);
        let total: f64 = graph.entities().iter().map(|&u| scores[u as usize]).sum();
        Some(if v == 0 { 0.0 } else { total / v as f64 })
    } else {
        None
    };
    let (vf, ef) = (v as f64, e as f64);
    Ok(GraphStats {
        vertices: v,
        edges: e,
        avg_degree: if v == 0 { 0.0 } else { 2.0 * ef / vf },
        avg_betweenness,
        density: if v < 2 { 0.0 } else { ef / (vf * (vf - 1.0)) },
    })
}

/// Unnormalized betweenness of every vertex (Brandes), on the undirected
/// simple projection: direction dropped, parallel edges collapsed, self-loops
/// removed. Each unordered pair is counted once.
pub fn betweenness(graph: &Graph) -> Vec<f64> {
    let n = graph.vertex_count();
    let adj = undirected_simple(graph);
    const CHUNK: usize = 64;
    let partials: Vec<Vec<f64>> = (0..n)
        .collect::<Vec<_>>()
        .par_chunks(CHUNK)
        .map(|sources| {
            let mut acc = vec![0.0; n];
            let mut state = BrandesState::new(n);
            for &s in sources {
                state.accumulate_from(&adj, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    // every unordered pair was visited from both endpoints
    total.iter_mut().for_each(|x| *x /= 2.0);
    total
}

fn undirected_simple(graph: &Graph) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); graph.vertex_count()];
    for e in graph.edges() {
        if e.src != e.dst {
            adj[e.src as usize].push(e.dst);
            adj[e.dst as usize].push(e.src);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

struct BrandesState {
    sigma: Vec<f64>,
    dist: Vec<i64>,
    delta: Vec<f64>,
    preds: Vec<Vec<u32>>,
    order: Vec<u32>,
    queue: VecDeque<u32>,
}

impl BrandesState {
    fn new(n: usize) -> Self {
        BrandesState {
            sigma: vec![0.0; n],
            dist: vec![-1; n],
            delta: vec![0.0; n],
            preds: vec![Vec::new(); n],
            order: Vec::with_capacity(n),
            queue: VecDeque::new(),
        }
    }

    fn accumulate_from(&mut self, adj: &[Vec<u32>], s: usize, acc: &mut [f64]) {
        for &v in &self.order {
            let v = v as usize;
            self.sigma[v] = 0.0;
            self.dist[v] = -1;
            self.delta[v] = 0.0;
            self.preds[v].clear();
        }
        self.order.clear();
        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.queue.push_back(s as u32);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let v = v as usize;
            for &w in &adj[v] {
                let w = w as usize;
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w as u32);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v as u32);
                }
            }
        }
        for &w in self.order.iter().rev() {
            let w = w as usize;
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in &self.preds[w] {
                let v = v as usize;
                self.delta[v] += self.sigma[v] * coeff;
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}
