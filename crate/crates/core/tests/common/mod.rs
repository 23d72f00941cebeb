//! Reference implementations used as test oracles. Nothing here calls into
//! the library's algorithms; they are written from the definitions alone.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdf2vec::ingest::Triple;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random labeled multigraph on `n` vertices `v0..`, `preds` predicates
/// `p0..`. With `dag` every edge goes from a lower to a higher index;
/// otherwise self-loops and parallel edges are allowed.
pub fn random_triples(rng: &mut ChaCha8Rng, n: usize, edges: usize, preds: usize, dag: bool) -> Vec<Triple> {
    (0..edges)
        .map(|_| {
            let (mut u, mut v) = (rng.random_range(0..n), rng.random_range(0..n));
            if dag {
                while u == v {
                    v = rng.random_range(0..n);
                }
                if u > v {
                    std::mem::swap(&mut u, &mut v);
                }
            }
            Triple::resource(format!("v{u}"), format!("p{}", rng.random_range(0..preds)), format!("v{v}"))
        })
        .collect()
}

/// Triples as `(s, p, o)` lexical keys with first-occurrence numbering.
pub struct RefGraph {
    pub names: Vec<String>,
    /// Out-edges per vertex in input order: `(pred, target)`.
    pub out: Vec<Vec<(usize, usize)>>,
    pub is_entity: Vec<bool>,
    pub edge_set: HashSet<(usize, usize, usize)>,
}

impl RefGraph {
    pub fn new(triples: &[Triple]) -> Self {
        let mut names: Vec<String> = Vec::new();
        let id = |names: &mut Vec<String>, k: &str| match names.iter().position(|n| n == k) {
            Some(i) => i,
            None => {
                names.push(k.to_string());
                names.len() - 1
            }
        };
        let mut rows = Vec::new();
        for t in triples {
            let s = id(&mut names, &t.subject);
            let p = id(&mut names, &t.predicate);
            let o = id(&mut names, &t.object);
            rows.push((s, p, o));
        }
        let mut out = vec![Vec::new(); names.len()];
        let mut is_entity = vec![false; names.len()];
        let mut edge_set = HashSet::new();
        for &(s, p, o) in &rows {
            out[s].push((p, o));
            is_entity[s] = true;
            is_entity[o] = true;
            edge_set.insert((s, p, o));
        }
        RefGraph { names, out, is_entity, edge_set }
    }

    pub fn id(&self, key: &str) -> usize {
        self.names.iter().position(|n| n == key).unwrap()
    }
}

/// Reference BFS: the first edge (frontier in discovery order, out-edges in
/// input order) to reach a vertex becomes its tree edge. Leaves in discovery
/// order each give one root-to-leaf walk `[root, p, v1, p, v2, ...]` and path
/// rows `(parent, child)` from the leaf upwards.
pub fn bfs_oracle(g: &RefGraph, root: usize, depth: usize) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let n = g.names.len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut level = vec![usize::MAX; n];
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    level[root] = 0;
    let mut children = vec![0usize; n];
    while let Some(u) = queue.pop_front() {
        if level[u] == depth {
            continue;
        }
        for &(p, v) in &g.out[u] {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                parent[v] = Some((u, p));
                children[u] += 1;
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    let mut walks = Vec::new();
    let mut rows = Vec::new();
    for &leaf in order.iter().filter(|&&v| children[v] == 0) {
        let mut rev = vec![leaf];
        let mut v = leaf;
        while let Some((u, p)) = parent[v] {
            rows.push((u, v));
            rev.push(p);
            rev.push(u);
            v = u;
        }
        rev.reverse();
        walks.push(rev);
    }
    (walks, rows)
}

pub fn log_sigmoid(x: f64) -> f64 {
    // direct definition; inputs in the oracle tests are small
    (1.0 / (1.0 + (-x).exp())).ln()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Negative-sampling objective for one hidden vector.
pub fn ns_loss(h: &[f64], positive: &[f64], negatives: &[&[f64]]) -> f64 {
    -log_sigmoid(dot(h, positive)) - negatives.iter().map(|n| log_sigmoid(-dot(h, n))).sum::<f64>()
}

pub fn mean_rows(rows: &[&[f64]]) -> Vec<f64> {
    let mut m = vec![0.0; rows[0].len()];
    for r in rows {
        for (a, b) in m.iter_mut().zip(r.iter()) {
            *a += b;
        }
    }
    m.iter().map(|x| x / rows.len() as f64).collect()
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b) / (dot(a, a).sqrt() * dot(b, b).sqrt())
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len() / 2]
}
