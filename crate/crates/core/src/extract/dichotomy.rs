//! Dense-or-min-degree dichotomy: a graph above the Turán count has a
//! large induced subgraph that is either noticeably denser than extremal
//! or has large minimum degree together with a `K_{r+1}`.
//!
//! The search deletes a minimum-degree vertex at a time, testing the
//! min-degree branch before the dense branch after every deletion. The
//! guarantee is hypothesized only for orders above `r^8`; at desk scale a
//! "not certified" outcome is an expected result, never a silent
//! fallback.

use super::{check_r, Branch, ExtractError};
use crate::bits;
use crate::clique::{enumerate_cliques, has_clique_in_mask, Clique};
use crate::generate::turan_edge_count;
use crate::graph::{Graph, VertexSet};

/// An induced subgraph with one certified branch inequality, re-verified
/// exactly on the returned object before return.
#[derive(Clone, Debug)]
pub struct DichotomyOutcome {
    pub subgraph: Graph,
    /// Map from subgraph vertex indices back to the input graph.
    pub index_map: Vec<usize>,
    pub branch: Branch,
    pub edges: usize,
    pub min_degree: usize,
    /// An explicit `(r+1)`-clique in subgraph coordinates (min-degree
    /// branch only).
    pub clique: Option<Clique>,
}

/// `delta * r^4 > (r^4 - r^3 - 1) * n'`, exactly.
pub(crate) fn mindeg_condition(delta: usize, order: usize, r: usize) -> bool {
    let r = r as u128;
    let r4 = r.pow(4);
    (delta as u128) * r4 > (r4 - r.pow(3) - 1) * order as u128
}

/// `e > ((r-1)/(2r) + 1/(r^4 (r^2 - 1))) * n'^2`, exactly.
fn dense_condition(edges: usize, order: usize, r: usize) -> bool {
    let r = r as u128;
    let n = order as u128;
    let scale = 2 * r.pow(5) * (r * r - 1);
    let coeff = (r - 1) * r.pow(4) * (r * r - 1) + 2 * r;
    (edges as u128) * scale > coeff * n * n
}

pub fn dichotomy_subgraph(g: &Graph, r: usize) -> Result<DichotomyOutcome, ExtractError> {
    check_r(r)?;
    let n = g.order();
    let threshold = turan_edge_count(r, n).map_err(ExtractError::Graph)?;
    if g.edge_count() <= threshold {
        return Err(ExtractError::EdgeCountTooLow {
            edges: g.edge_count(),
            required: threshold + 1,
        });
    }

    let mut alive = bits::full_mask(n);
    let mut degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut edges = g.edge_count();
    let mut order = n;

    loop {
        let min_degree = bits::iter_ones(&alive).map(|v| degrees[v]).min().unwrap_or(0);

        // min-degree branch first: it feeds the stronger extraction
        if mindeg_condition(min_degree, order, r) && has_clique_in_mask(g, &alive, r + 1) {
            return certify(g, &alive, r, Branch::Mindeg);
        }
        if dense_condition(edges, order, r) {
            return certify(g, &alive, r, Branch::Dense);
        }

        // delete while the minimum degree is strictly below the branch
        // threshold and the order stays above (1 - 1/r^2) n
        let may_delete = (min_degree as u128) * (r as u128).pow(4)
            < ((r as u128).pow(4) - (r as u128).pow(3) - 1) * order as u128;
        let order_floor_ok = ((order - 1) as u128) * (r as u128 * r as u128)
            > (r as u128 * r as u128 - 1) * n as u128;
        if !may_delete || !order_floor_ok {
            return Err(ExtractError::DichotomyNotCertified {
                order,
                order_floor: (n * (r * r - 1)).div_ceil(r * r),
                min_degree,
                edges,
            });
        }
        let victim = bits::iter_ones(&alive)
            .min_by_key(|&v| (degrees[v], v))
            .expect("alive set is nonempty");
        bits::clear(&mut alive, victim);
        edges -= degrees[victim];
        order -= 1;
        for u in bits::iter_ones(&alive) {
            if g.has_edge(u, victim) {
                degrees[u] -= 1;
            }
        }
        degrees[victim] = 0;
    }
}

fn certify(
    g: &Graph,
    alive: &[u64],
    r: usize,
    branch: Branch,
) -> Result<DichotomyOutcome, ExtractError> {
    let keep = VertexSet::from_sorted_unchecked(bits::iter_ones(alive).collect());
    let (subgraph, index_map) = g.induced(&keep).map_err(ExtractError::Graph)?;
    let edges = subgraph.edge_count();
    let min_degree = subgraph.min_degree();
    let ok = match branch {
        Branch::Mindeg => mindeg_condition(min_degree, subgraph.order(), r),
        Branch::Dense => dense_condition(edges, subgraph.order(), r),
    };
    if !ok {
        return Err(ExtractError::Internal(
            "dichotomy certificate failed re-verification".into(),
        ));
    }
    let clique = match branch {
        Branch::Mindeg => {
            let cliques = enumerate_cliques(&subgraph, r + 1);
            match cliques.members().first() {
                Some(c) => Some(c.clone()),
                None => {
                    return Err(ExtractError::Internal(
                        "min-degree branch lost its clique on re-verification".into(),
                    ))
                }
            }
        }
        Branch::Dense => None,
    };
    Ok(DichotomyOutcome {
        subgraph,
        index_map,
        branch,
        edges,
        min_degree,
        clique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{turan_graph, turan_plus_edge};

    #[test]
    fn turan_plus_edge_lands_on_mindeg_immediately() {
        let g = turan_plus_edge(2, 10).unwrap();
        let out = dichotomy_subgraph(&g, 2).unwrap();
        assert_eq!(out.branch, Branch::Mindeg);
        assert_eq!(out.subgraph.order(), 10); // G' = G
        assert_eq!(out.min_degree, 5);
        assert!(out.clique.is_some());
    }

    #[test]
    fn complete_graph_lands_on_mindeg() {
        let g = Graph::complete(10);
        let out = dichotomy_subgraph(&g, 2).unwrap();
        assert_eq!(out.branch, Branch::Mindeg);
        assert_eq!(out.subgraph.order(), 10);
        assert_eq!(out.min_degree, 9);
    }

    #[test]
    fn turan_graph_itself_is_a_precondition_error() {
        let g = turan_graph(2, 10).unwrap();
        assert!(matches!(
            dichotomy_subgraph(&g, 2),
            Err(ExtractError::EdgeCountTooLow { required: 26, .. })
        ));
    }

    #[test]
    fn exact_conditions() {
        // r = 2: threshold (1 - 1/2 - 1/16) n = 0.4375 n
        assert!(mindeg_condition(5, 10, 2)); // 5 > 4.375
        assert!(!mindeg_condition(4, 10, 2));
        // dense: (1/4 + 1/48) n'^2
        assert!(dense_condition(28, 10, 2)); // 28 > 27.08
        assert!(!dense_condition(27, 10, 2));
    }
}
