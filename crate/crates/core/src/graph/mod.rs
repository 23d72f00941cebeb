//! Compressed adjacency storage for the tokenized multigraph.

mod stats;

pub use stats::{betweenness, compute_stats, GraphStats, BETWEENNESS_VERTEX_LIMIT};

use crate::ingest::EncodedEdge;
use crate::{Error, Result, Token};

/// Directed labeled multigraph in CSR layout. Vertices are vocabulary tokens;
/// out-edges of `v` live at `row_offsets[v]..row_offsets[v + 1]`, in input
/// order. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    row_offsets: Vec<usize>,
    col_targets: Vec<Token>,
    col_predicates: Vec<Token>,
    /// Which vertices count as entities for statistics and default walk roots.
    entity_mask: Vec<bool>,
}

/// Build the CSR with a stable counting sort on source. Every vertex counts as
/// an entity; see [`Graph::with_entity_mask`].
pub fn build_graph(edges: &[EncodedEdge], vertex_count: usize) -> Result<Graph> {
    for e in edges {
        for t in [e.src, e.pred, e.dst] {
            if t as usize >= vertex_count {
                return Err(Error::TokenOutOfRange { token: t as u64, bound: vertex_count });
            }
        }
    }
    let mut row_offsets = vec![0usize; vertex_count + 1];
    for e in edges {
        row_offsets[e.src as usize + 1] += 1;
    }
    for v in 0..vertex_count {
        row_offsets[v + 1] += row_offsets[v];
    }
    let mut cursor = row_offsets.clone();
    let mut col_targets = vec![0; edges.len()];
    let mut col_predicates = vec![0; edges.len()];
    for e in edges {
        let slot = &mut cursor[e.src as usize];
        col_targets[*slot] = e.dst;
        col_predicates[*slot] = e.pred;
        *slot += 1;
    }
    Ok(Graph {
        row_offsets,
        col_targets,
        col_predicates,
        entity_mask: vec![true; vertex_count],
    })
}

impl Graph {
    /// Restrict the entity set, e.g. to exclude predicate-only tokens.
    pub fn with_entity_mask(mut self, mask: Vec<bool>) -> Self {
        assert_eq!(mask.len(), self.vertex_count(), "entity mask length mismatch");
        self.entity_mask = mask;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.row_offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.col_targets.len()
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn is_entity(&self, v: Token) -> bool {
        self.entity_mask[v as usize]
    }

    pub fn entity_count(&self) -> usize {
        self.entity_mask.iter().filter(|&&e| e).count()
    }

    pub fn entities(&self) -> Vec<Token> {
        (0..self.vertex_count() as Token).filter(|&v| self.entity_mask[v as usize]).collect()
    }

    /// `(predicate, target)` pairs leaving `v`.
    pub fn out_neighbors(&self, v: Token) -> Result<impl ExactSizeIterator<Item = (Token, Token)> + '_> {
        if v as usize >= self.vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: v as u64, bound: self.vertex_count() });
        }
        let (preds, targets) = self.adjacency(v);
        Ok(preds.iter().copied().zip(targets.iter().copied()))
    }

    /// Raw adjacency slices `(predicates, targets)` of `v`. Panics if `v` is
    /// out of range.
    #[inline]
    pub fn adjacency(&self, v: Token) -> (&[Token], &[Token]) {
        let lo = self.row_offsets[v as usize];
        let hi = self.row_offsets[v as usize + 1];
        (&self.col_predicates[lo..hi], &self.col_targets[lo..hi])
    }

    #[inline]
    pub fn out_degree(&self, v: Token) -> usize {
        self.row_offsets[v as usize + 1] - self.row_offsets[v as usize]
    }

    /// Whether `src -pred-> dst` is an edge.
    pub fn has_edge(&self, src: Token, pred: Token, dst: Token) -> bool {
        if src as usize >= self.vertex_count() {
            return false;
        }
        let (preds, targets) = self.adjacency(src);
        preds.iter().zip(targets).any(|(&p, &t)| p == pred && t == dst)
    }

    /// All edges in CSR order.
    pub fn edges(&self) -> impl Iterator<Item = EncodedEdge> + '_ {
        (0..self.vertex_count() as Token).flat_map(move |v| {
            let (preds, targets) = self.adjacency(v);
            preds.iter().zip(targets).map(move |(&p, &t)| EncodedEdge::new(v, p, t))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(s: Token, p: Token, d: Token) -> EncodedEdge {
        EncodedEdge::new(s, p, d)
    }

    #[test]
    fn single_edge_offsets() {
        let g = build_graph(&[e(0, 1, 2)], 3).unwrap();
        assert_eq!(g.row_offsets(), &[0, 1, 1, 1]);
    }

    #[test]
    fn empty_edge_list() {
        let g = build_graph(&[], 2).unwrap();
        assert_eq!(g.row_offsets(), &[0, 0, 0]);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parallel_edges_kept() {
        let g = build_graph(&[e(0, 1, 2), e(0, 1, 2)], 3).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.out_neighbors(0).unwrap().count(), 2);
    }

    #[test]
    fn token_out_of_range() {
        assert!(matches!(
            build_graph(&[e(0, 1, 5)], 3),
            Err(Error::TokenOutOfRange { token: 5, bound: 3 })
        ));
    }

    #[test]
    fn star_leaf_and_self_loop() {
        // r=0, p=1, a=2, b=3, c=4
        let g = build_graph(&[e(0, 1, 2), e(0, 1, 3), e(0, 1, 4), e(4, 1, 4)], 5).unwrap();
        assert_eq!(g.out_neighbors(0).unwrap().len(), 3);
        assert_eq!(g.out_neighbors(2).unwrap().len(), 0);
        assert_eq!(g.out_neighbors(4).unwrap().collect::<Vec<_>>(), vec![(1, 4)]);
        assert!(matches!(g.out_neighbors(9), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn adjacency_keeps_input_order_within_source() {
        let g = build_graph(&[e(1, 0, 2), e(0, 0, 3), e(1, 0, 0), e(1, 0, 3)], 4).unwrap();
        let (_, t) = g.adjacency(1);
        assert_eq!(t, &[2, 0, 3]);
    }

    proptest! {
        #[test]
        fn flattening_reproduces_edge_multiset(
            raw in proptest::collection::vec((0u32..12, 0u32..12, 0u32..12), 0..80)
        ) {
            let edges: Vec<_> = raw.iter().map(|&(s, p, d)| e(s, p, d)).collect();
            let g = build_graph(&edges, 12).unwrap();
            let total: usize = (0..12).map(|v| g.out_neighbors(v).unwrap().len()).sum();
            prop_assert_eq!(total, g.edge_count());
            let offs = g.row_offsets();
            prop_assert_eq!(offs[0], 0);
            prop_assert_eq!(offs[12], edges.len());
            prop_assert!(offs.windows(2).all(|w| w[0] <= w[1]));
            let mut flat: Vec<_> = g.edges().collect();
            let mut input = edges.clone();
            flat.sort();
            input.sort();
            prop_assert_eq!(flat, input);
        }
    }
}
