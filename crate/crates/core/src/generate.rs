//! Generators for the instance families used by pipelines and tests:
//! Turán graphs, complete multipartite graphs (optionally with one edge
//! added inside the first part), and uniform random graphs with a fixed
//! edge count.

use crate::graph::{Graph, GraphError};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Part sizes `s_1, ..., s_r` for a complete multipartite graph, with an
/// optional extra edge between the first two vertices of part 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartSpec {
    sizes: Vec<usize>,
    plus_edge: bool,
}

impl PartSpec {
    pub fn new(sizes: Vec<usize>, plus_edge: bool) -> Result<Self, GraphError> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(GraphError::EmptyPart);
        }
        if plus_edge && sizes[0] < 2 {
            return Err(GraphError::PlusEdgeNeedsTwo { size: sizes[0] });
        }
        Ok(PartSpec { sizes, plus_edge })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn plus_edge(&self) -> bool {
        self.plus_edge
    }

    pub fn part_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }
}

/// Part sizes of the balanced partition of `n` into `r` parts, larger parts
/// first (sizes `ceil(n/r)` then `floor(n/r)`).
pub fn balanced_part_sizes(r: usize, n: usize) -> Result<Vec<usize>, GraphError> {
    if r == 0 || r > n {
        return Err(GraphError::PartCountOutOfRange { r, n });
    }
    let q = n / r;
    let rem = n % r;
    let mut sizes = vec![q + 1; rem];
    sizes.extend(std::iter::repeat(q).take(r - rem));
    Ok(sizes)
}

/// Exact edge count of the `r`-partite Turán graph of order `n`, computed
/// combinatorially from the balanced partition.
pub fn turan_edge_count(r: usize, n: usize) -> Result<usize, GraphError> {
    let sizes = balanced_part_sizes(r, n)?;
    let internal: usize = sizes.iter().map(|&s| s * (s - 1) / 2).sum();
    Ok(n * (n - 1) / 2 - internal)
}

/// The `r`-partite Turán graph of order `n`: complete multipartite with
/// part sizes as equal as possible. Vertices are consecutive per part,
/// larger parts first.
pub fn turan_graph(r: usize, n: usize) -> Result<Graph, GraphError> {
    let sizes = balanced_part_sizes(r, n)?;
    let spec = PartSpec::new(sizes, false)?;
    complete_multipartite(&spec)
}

/// The Turán graph plus one edge between the first two vertices of part 1.
pub fn turan_plus_edge(r: usize, n: usize) -> Result<Graph, GraphError> {
    let sizes = balanced_part_sizes(r, n)?;
    if sizes[0] < 2 {
        return Err(GraphError::PlusEdgeNeedsTwo { size: sizes[0] });
    }
    let spec = PartSpec::new(sizes, true)?;
    complete_multipartite(&spec)
}

/// The complete multipartite graph for `spec`; when `plus_edge` is set, one
/// extra edge joins the first two vertices of part 1.
pub fn complete_multipartite(spec: &PartSpec) -> Result<Graph, GraphError> {
    let n = spec.order();
    let mut part_of = vec![0usize; n];
    let mut next = 0;
    for (idx, &s) in spec.sizes().iter().enumerate() {
        for _ in 0..s {
            part_of[next] = idx;
            next += 1;
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    if spec.plus_edge() {
        edges.push((0, 1));
    }
    Graph::new(n, &edges)
}

/// A uniformly random graph with exactly `m` edges, deterministic for a
/// fixed `seed`.
///
/// Sampling is reservoir style (Algorithm R) over the lexicographically
/// ordered pair space, driven by a `ChaCha8` generator seeded with `seed`,
/// so the output is identical across platforms and versions.
pub fn random_graph_with_edges(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(GraphError::TooManyEdges {
            requested: m,
            order: n,
            max,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reservoir: Vec<(usize, usize)> = Vec::with_capacity(m);
    let mut index = 0usize;
    for u in 0..n {
        for v in (u + 1)..n {
            if index < m {
                reservoir.push((u, v));
            } else {
                let j = rng.gen_range(0..=index);
                if j < m {
                    reservoir[j] = (u, v);
                }
            }
            index += 1;
        }
    }
    Graph::new(n, &reservoir)
}
