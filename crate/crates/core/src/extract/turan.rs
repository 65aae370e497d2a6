//! The headline pipeline: a graph above the Turán edge count yields a
//! witness, via the dense-or-min-degree dichotomy.

use super::covered::covered_multipartite;
use super::dichotomy::dichotomy_subgraph;
use super::mindeg::mindeg_krplus_sized;
use super::{check_r, Branch, ExtractError, Extraction, PipelineConfig};
use crate::clique::enumerate_cliques;
use crate::generate::turan_edge_count;
use crate::graph::{Graph, VertexSet};
use crate::oracle::verify_krplus;
use crate::witness::KrPlusWitness;

/// Extracts a witness from any graph with more than `t_r(n)` edges.
///
/// The dense branch covers a complete `(r+1)`-partite subgraph by the
/// `(r+1)`-cliques of the dichotomy subgraph and folds it into a witness;
/// the min-degree branch runs the staged extraction on the dichotomy
/// subgraph. Both report the branch taken, and min-degree runs carry the
/// full trace (in subgraph coordinates, with the index map alongside).
pub fn turan_inverted(
    g: &Graph,
    r: usize,
    c: f64,
    cfg: &PipelineConfig,
) -> Result<Extraction, ExtractError> {
    check_r(r)?;
    let n = g.order();
    let required = turan_edge_count(r, n).map_err(ExtractError::Graph)? + 1;
    if g.edge_count() < required {
        return Err(ExtractError::EdgeCountTooLow {
            edges: g.edge_count(),
            required,
        });
    }
    let sizes = super::target_sizes(c, n);
    if sizes.is_empty() {
        return Err(ExtractError::TargetSizeNotPositive { c, n });
    }

    let dich = dichotomy_subgraph(g, r)?;
    let mut last = None;
    for s in sizes {
        match extract_on_branch(g, r, s, &dich.subgraph, &dich.index_map, dich.branch, cfg) {
            Ok(extraction) => return Ok(extraction),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one size attempted"))
}

pub(crate) fn extract_on_branch(
    g: &Graph,
    r: usize,
    s: usize,
    sub: &Graph,
    index_map: &[usize],
    branch: Branch,
    cfg: &PipelineConfig,
) -> Result<Extraction, ExtractError> {
    match branch {
        Branch::Mindeg => {
            let (local, trace) = mindeg_krplus_sized(sub, r, s, None, cfg)?;
            let witness = map_witness(&local, index_map);
            verify_krplus(g, &witness).map_err(ExtractError::WitnessRejected)?;
            Ok(Extraction {
                witness,
                branch: Branch::Mindeg,
                s_target: s,
                trace: Some(trace),
                trace_domain: Some(index_map.to_vec()),
            })
        }
        Branch::Dense => {
            let cliques = enumerate_cliques(sub, r + 1);
            if cliques.is_empty() {
                return Err(ExtractError::Internal(
                    "dense branch certified but the subgraph has no (r+1)-clique".into(),
                ));
            }
            let parts = covered_multipartite(sub, &cliques, s, 1, cfg)?;
            let local = assemble_krplus(sub, &parts)?;
            let witness = map_witness(&local, index_map);
            verify_krplus(g, &witness).map_err(ExtractError::WitnessRejected)?;
            Ok(Extraction {
                witness,
                branch: Branch::Dense,
                s_target: s,
                trace: None,
                trace_domain: None,
            })
        }
    }
}

fn map_witness(w: &KrPlusWitness, index_map: &[usize]) -> KrPlusWitness {
    KrPlusWitness {
        parts: w
            .parts
            .iter()
            .map(|p| p.iter().map(|v| index_map[v]).collect())
            .collect(),
        extra_edge: {
            let (a, b) = w.extra_edge;
            let (a, b) = (index_map[a], index_map[b]);
            (a.min(b), a.max(b))
        },
    }
}

/// Folds a complete multipartite family of at least three pairwise
/// complete parts into a witness with one part fewer: the new first part
/// takes all but one vertex of part 1 plus one vertex of part 2 (giving
/// the internal edge across the old parts), the rest of parts 1 and 2 are
/// dropped, and the remaining parts are kept.
pub fn assemble_krplus(g: &Graph, parts: &[VertexSet]) -> Result<KrPlusWitness, ExtractError> {
    if parts.len() < 3 {
        return Err(ExtractError::InvalidAssembly {
            reason: format!("need at least 3 parts, got {}", parts.len()),
        });
    }
    if let Some(i) = parts.iter().position(|p| p.is_empty()) {
        return Err(ExtractError::InvalidAssembly {
            reason: format!("part {i} is empty"),
        });
    }
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            if parts[i].iter().any(|v| parts[j].contains(v)) {
                return Err(ExtractError::InvalidAssembly {
                    reason: format!("parts {i} and {j} overlap"),
                });
            }
            if !g.is_complete_between(&parts[i], &parts[j]) {
                return Err(ExtractError::InvalidAssembly {
                    reason: format!("parts {i} and {j} are not completely joined"),
                });
            }
        }
    }

    let s1 = parts[0].len();
    let from_first: Vec<usize> = if s1 == 1 {
        parts[0].iter().collect()
    } else {
        parts[0].iter().take(s1 - 1).collect()
    };
    let partner = parts[1].iter().next().expect("parts are nonempty");
    let extra_a = from_first[0];
    let first_part: VertexSet = from_first.into_iter().chain([partner]).collect();

    let mut out_parts = vec![first_part];
    out_parts.extend(parts.iter().skip(2).cloned());
    let witness = KrPlusWitness {
        parts: out_parts,
        extra_edge: (extra_a.min(partner), extra_a.max(partner)),
    };
    verify_krplus(g, &witness).map_err(ExtractError::WitnessRejected)?;
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::c_for_target;
    use crate::generate::{complete_multipartite, turan_graph, turan_plus_edge, PartSpec};
    use crate::oracle;

    #[test]
    fn assembles_from_octahedron_parts() {
        let g = complete_multipartite(&PartSpec::new(vec![2, 2, 2], false).unwrap()).unwrap();
        let parts = vec![
            VertexSet::new(vec![0, 1]),
            VertexSet::new(vec![2, 3]),
            VertexSet::new(vec![4, 5]),
        ];
        let w = assemble_krplus(&g, &parts).unwrap();
        assert_eq!(w.part_sizes(), vec![2, 2]); // a1, b1 plus part C
        assert_eq!(w.parts[0].as_slice(), &[0, 2]);
        assert!(oracle::verify_krplus(&g, &w).is_ok());
    }

    #[test]
    fn assembles_from_singleton_first_parts() {
        let g = complete_multipartite(&PartSpec::new(vec![1, 1, 4], false).unwrap()).unwrap();
        let parts = vec![
            VertexSet::new(vec![0]),
            VertexSet::new(vec![1]),
            VertexSet::new(vec![2, 3, 4, 5]),
        ];
        let w = assemble_krplus(&g, &parts).unwrap();
        assert_eq!(w.part_sizes(), vec![2, 4]);
    }

    #[test]
    fn assembles_four_parts() {
        let g = complete_multipartite(&PartSpec::new(vec![2, 2, 2, 2], false).unwrap()).unwrap();
        let parts = vec![
            VertexSet::new(vec![0, 1]),
            VertexSet::new(vec![2, 3]),
            VertexSet::new(vec![4, 5]),
            VertexSet::new(vec![6, 7]),
        ];
        let w = assemble_krplus(&g, &parts).unwrap();
        assert_eq!(w.part_sizes(), vec![2, 2, 2]);
        assert!(oracle::verify_krplus(&g, &w).is_ok());
    }

    #[test]
    fn rejects_degenerate_shapes() {
        let g = Graph::complete(4);
        assert!(matches!(
            assemble_krplus(&g, &[VertexSet::new(vec![0]), VertexSet::new(vec![1])]),
            Err(ExtractError::InvalidAssembly { .. })
        ));
        let not_joined = turan_graph(3, 6).unwrap();
        // parts 0 and 1 both inside the first class: not completely joined
        assert!(matches!(
            assemble_krplus(
                &not_joined,
                &[
                    VertexSet::new(vec![0]),
                    VertexSet::new(vec![1]),
                    VertexSet::new(vec![2])
                ]
            ),
            Err(ExtractError::InvalidAssembly { .. })
        ));
    }

    #[test]
    fn extracts_book_from_t2_8_plus_edge() {
        let g = turan_plus_edge(2, 8).unwrap();
        let c = 2.0 / (8f64).ln();
        let out = turan_inverted(&g, 2, c, &PipelineConfig::default()).unwrap();
        assert!(oracle::verify_krplus(&g, &out.witness).is_ok());
        assert_eq!(out.witness.parts[0].len(), 2);
        assert_eq!(out.witness.t_achieved(), 4); // the whole opposite side
    }

    #[test]
    fn extracts_from_t3_9_plus_edge() {
        let g = turan_plus_edge(3, 9).unwrap();
        let out = turan_inverted(&g, 3, c_for_target(1, 9), &PipelineConfig::default()).unwrap();
        assert!(oracle::verify_krplus(&g, &out.witness).is_ok());
        assert_eq!(out.witness.part_count(), 3);
        // the oracle agrees a minimal witness exists
        let spec = PartSpec::new(vec![2, 1, 1], true).unwrap();
        let found = oracle::find_krplus_exact(&g, &spec, oracle::DEFAULT_NODE_BUDGET).unwrap();
        assert!(found.found().is_some());
    }

    #[test]
    fn turan_graph_itself_is_rejected() {
        let g = turan_graph(2, 8).unwrap();
        assert!(matches!(
            turan_inverted(&g, 2, 1.0, &PipelineConfig::default()),
            Err(ExtractError::EdgeCountTooLow { .. })
        ));
    }

    #[test]
    fn zero_target_size_is_rejected() {
        let g = turan_plus_edge(2, 8).unwrap();
        assert!(matches!(
            turan_inverted(&g, 2, 1e-9, &PipelineConfig::default()),
            Err(ExtractError::TargetSizeNotPositive { .. })
        ));
    }
}
