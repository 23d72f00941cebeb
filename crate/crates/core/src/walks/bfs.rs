use rayon::prelude::*;

use super::{check_walk_params, WalkCorpus, WalkStrategy};
use crate::graph::Graph;
use crate::{Result, Token};

/// One edge of a materialized leaf-to-root path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathRow {
    pub source: Token,
    pub target: Token,
    pub walk_id: usize,
}

/// `(source, target, walk_id)` rows; each walk's rows run from its leaf up to
/// the root, so an edge shared by several paths appears once per path.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathTable {
    pub rows: Vec<PathRow>,
}

const NONE: u32 = u32::MAX;

/// Walks along the BFS spanning tree of each root, bounded by `depth` levels.
///
/// Each discovered vertex keeps exactly one predecessor edge: the first one
/// to reach it, scanning the frontier in discovery order and each adjacency
/// list in CSR order. Every leaf of the tree yields one walk, root first; a
/// root with no out-edges yields `[root]` and no path rows. Walk ids are
/// global and ordered by root, then leaf discovery order.
pub fn bfs_walks(graph: &Graph, roots: &[Token], depth: usize) -> Result<(WalkCorpus, PathTable)> {
    check_walk_params(depth, roots, graph.vertex_count())?;
    let n = graph.vertex_count();
    let per_root: Vec<Vec<Vec<Token>>> = roots
        .par_iter()
        .map_init(|| TreeScratch::new(n), |scratch, &root| scratch.leaf_paths(graph, root, depth))
        .collect();

    let mut corpus = WalkCorpus::new(WalkStrategy::Bfs);
    let mut table = PathTable::default();
    for walk in per_root.into_iter().flatten() {
        let walk_id = corpus.len();
        // walk is root..leaf as (e, p, e, ...); rows go leaf -> root
        let entities: Vec<Token> = walk.iter().step_by(2).copied().collect();
        for pair in entities.windows(2).rev() {
            table.rows.push(PathRow { source: pair[0], target: pair[1], walk_id });
        }
        corpus.push(&walk);
    }
    Ok((corpus, table))
}

struct TreeScratch {
    parent: Vec<u32>,
    via: Vec<u32>,
    has_child: Vec<bool>,
    discovered: Vec<Token>,
}

impl TreeScratch {
    fn new(n: usize) -> Self {
        TreeScratch {
            parent: vec![NONE; n],
            via: vec![NONE; n],
            has_child: vec![false; n],
            discovered: Vec::new(),
        }
    }

    fn leaf_paths(&mut self, graph: &Graph, root: Token, depth: usize) -> Vec<Vec<Token>> {
        self.discovered.clear();
        self.discovered.push(root);
        // the root is its own parent so it is never rediscovered
        self.parent[root as usize] = root;
        let mut level_start = 0;
        for _ in 0..depth {
            let level_end = self.discovered.len();
            if level_start == level_end {
                break;
            }
            for i in level_start..level_end {
                let v = self.discovered[i];
                let (preds, targets) = graph.adjacency(v);
                for (&p, &w) in preds.iter().zip(targets) {
                    if self.parent[w as usize] == NONE {
                        self.parent[w as usize] = v;
                        self.via[w as usize] = p;
                        self.has_child[v as usize] = true;
                        self.discovered.push(w);
                    }
                }
            }
            level_start = level_end;
        }

        let mut paths = Vec::new();
        if self.discovered.len() == 1 {
            paths.push(vec![root]);
        }
        for &leaf in &self.discovered[1..] {
            if self.has_child[leaf as usize] {
                continue;
            }
            let mut path = vec![leaf];
            let mut v = leaf;
            while v != root {
                path.push(self.via[v as usize]);
                v = self.parent[v as usize];
                path.push(v);
            }
            path.reverse();
            paths.push(path);
        }

        for &v in &self.discovered {
            self.parent[v as usize] = NONE;
            self.via[v as usize] = NONE;
            self.has_child[v as usize] = false;
        }
        paths
    }
}
