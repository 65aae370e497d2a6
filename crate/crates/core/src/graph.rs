//! Simple undirected graphs with row-bitset adjacency.
//!
//! A [`Graph`] is immutable after construction: every operation is a pure
//! query, so values can be shared freely across threads.

use crate::bits;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("part count {r} invalid for order {n} (need 1 <= r <= n)")]
    PartCountOutOfRange { r: usize, n: usize },
    #[error("requested {requested} edges but order {order} admits at most {max}")]
    TooManyEdges {
        requested: usize,
        order: usize,
        max: usize,
    },
    #[error("part sizes must all be positive")]
    EmptyPart,
    #[error("an edge inside the first part needs its size >= 2, got {size}")]
    PlusEdgeNeedsTwo { size: usize },
}

/// A strictly sorted set of vertex indices of some host graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    /// The caller guarantees `members` is strictly increasing.
    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    /// Checks every member is `< order`.
    pub fn check_range(&self, order: usize) -> Result<(), GraphError> {
        match self.0.iter().find(|&&v| v >= order) {
            Some(&vertex) => Err(GraphError::VertexOutOfRange { vertex, order }),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = Vec::<usize>::deserialize(deserializer)?;
        Ok(VertexSet::new(raw))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Immutable simple undirected graph on vertices `0..order`.
///
/// Adjacency is a symmetric boolean relation stored as one bitset row per
/// vertex; there are no self-loops and the edge count is cached.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn new(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let words = bits::words_for(order);
        let mut g = Graph {
            order,
            words,
            rows: vec![0; order * words],
            edges: 0,
        };
        for &(u, v) in edges {
            if u >= order {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u,
                    order,
                });
            }
            if v >= order {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    order,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            g.add_edge_mut(u, v);
        }
        Ok(g)
    }

    pub fn empty(order: usize) -> Self {
        Graph::new(order, &[]).expect("empty graph is always valid")
    }

    pub fn complete(order: usize) -> Self {
        let mut edges = Vec::with_capacity(order * (order.saturating_sub(1)) / 2);
        for u in 0..order {
            for v in (u + 1)..order {
                edges.push((u, v));
            }
        }
        Graph::new(order, &edges).expect("complete graph is always valid")
    }

    pub(crate) fn add_edge_mut(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.order && v < self.order);
        if !self.has_edge(u, v) {
            bits::set(&mut self.rows[u * self.words..(u + 1) * self.words], v);
            bits::set(&mut self.rows[v * self.words..(v + 1) * self.words], u);
            self.edges += 1;
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::get(self.row(u), v)
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits::iter_ones(self.row(v))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for u in 0..self.order {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The vertices adjacent to every member of `set`. Members of `set`
    /// themselves never appear (no self-loops).
    pub fn common_neighborhood(&self, set: &VertexSet) -> Result<VertexSet, GraphError> {
        set.check_range(self.order)?;
        let mut acc = bits::full_mask(self.order);
        for v in set.iter() {
            bits::and_assign(&mut acc, self.row(v));
        }
        Ok(VertexSet::from_sorted_unchecked(
            bits::iter_ones(&acc).collect(),
        ))
    }

    /// The induced subgraph on `set`, plus the map from new indices back to
    /// the original vertices (a strictly increasing bijection onto `set`).
    pub fn induced(&self, set: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        set.check_range(self.order)?;
        let map: Vec<usize> = set.iter().collect();
        let mut edges = Vec::new();
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        let sub = Graph::new(map.len(), &edges)?;
        Ok((sub, map))
    }

    /// Do all `(r, s)` with `r != s` in `pairwise` have an edge?
    pub fn is_complete_between(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|u| b.iter().all(|v| self.has_edge(u, v)))
    }

    /// Checks that `set` is a clique.
    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let vs = set.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.order, self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_triangle() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(2, 0));
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn empty_graph_has_no_edges() {
        let g = Graph::new(4, &[]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.min_degree(), 0);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_self_loop_and_out_of_range() {
        assert_eq!(
            Graph::new(3, &[(1, 1)]),
            Err(GraphError::SelfLoop { vertex: 1 })
        );
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange {
                vertex: 3,
                order: 3
            })
        );
    }

    #[test]
    fn edge_count_is_half_degree_sum() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (3, 4), (1, 2)]).unwrap();
        let degree_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn common_neighborhood_examples() {
        let k4 = Graph::complete(4);
        let r = VertexSet::new(vec![0, 1]);
        assert_eq!(
            k4.common_neighborhood(&r).unwrap(),
            VertexSet::new(vec![2, 3])
        );

        let triangle = Graph::complete(3);
        let all = VertexSet::new(vec![0, 1, 2]);
        assert!(triangle.common_neighborhood(&all).unwrap().is_empty());
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = Graph::complete(4);
        let (tri, map) = k4.induced(&VertexSet::new(vec![0, 1, 2])).unwrap();
        assert_eq!(tri.order(), 3);
        assert_eq!(tri.edge_count(), 3);
        assert_eq!(map, vec![0, 1, 2]);

        let (empty, _) = k4.induced(&VertexSet::empty()).unwrap();
        assert_eq!(empty.order(), 0);
    }

    #[test]
    fn induced_out_of_range_rejected() {
        let g = Graph::empty(3);
        assert!(g.induced(&VertexSet::new(vec![5])).is_err());
    }

    #[test]
    fn vertex_set_dedups_and_sorts() {
        let s = VertexSet::new(vec![3, 1, 3, 0]);
        assert_eq!(s.as_slice(), &[0, 1, 3]);
        assert!(s.contains(1));
        assert!(!s.contains(2));
    }
}
