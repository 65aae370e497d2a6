//! Bipartite graphs with sides A and B, and complete bipartite witnesses.

use crate::bits;
use crate::graph::{GraphError, VertexSet};
use serde::Serialize;

/// A bipartite graph with side A of size `a` and side B of size `b`;
/// adjacency is stored as one B-bitset row per A-vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    a: usize,
    b: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl BipartiteGraph {
    /// Builds from cross edges `(a_index, b_index)`; duplicates collapse.
    pub fn new(a: usize, b: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let words = bits::words_for(b);
        let mut g = BipartiteGraph {
            a,
            b,
            words,
            rows: vec![0; a * words],
            edges: 0,
        };
        for &(u, v) in edges {
            if u >= a {
                return Err(GraphError::VertexOutOfRange { vertex: u, order: a });
            }
            if v >= b {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: b });
            }
            if !g.has_edge(u, v) {
                bits::set(&mut g.rows[u * words..(u + 1) * words], v);
                g.edges += 1;
            }
        }
        Ok(g)
    }

    pub fn side_a_size(&self) -> usize {
        self.a
    }

    pub fn side_b_size(&self) -> usize {
        self.b
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::get(self.row(u), v)
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn degree_a(&self, u: usize) -> usize {
        bits::count(self.row(u))
    }

    /// B-vertices adjacent to every listed A-vertex.
    pub fn common_b_neighborhood(&self, a_subset: &[usize]) -> VertexSet {
        let mut acc = bits::full_mask(self.b);
        for &u in a_subset {
            bits::and_assign(&mut acc, self.row(u));
        }
        VertexSet::from_sorted_unchecked(bits::iter_ones(&acc).collect())
    }
}

/// A complete bipartite subgraph `K_2(s, t)` found in a host bipartite
/// graph: `S` on side A, `T` on side B, every cross pair adjacent, and `T`
/// equal to the full common neighborhood of `S` (so `T` is maximal).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KstWitness {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl KstWitness {
    /// Builds the witness for a chosen `S`, taking `T` as the full common
    /// neighborhood.
    pub fn for_side_a(host: &BipartiteGraph, side_a: VertexSet) -> Result<Self, GraphError> {
        side_a.check_range(host.side_a_size())?;
        let a_list: Vec<usize> = side_a.iter().collect();
        let side_b = host.common_b_neighborhood(&a_list);
        Ok(KstWitness { side_a, side_b })
    }

    pub fn s(&self) -> usize {
        self.side_a.len()
    }

    pub fn t(&self) -> usize {
        self.side_b.len()
    }

    /// Re-verifies the defining predicates against `host`.
    pub fn is_valid_in(&self, host: &BipartiteGraph) -> bool {
        if self.side_a.check_range(host.side_a_size()).is_err() {
            return false;
        }
        let a_list: Vec<usize> = self.side_a.iter().collect();
        host.common_b_neighborhood(&a_list) == self.side_b
    }
}
