//! Independent exponential-time ground truth for the extraction claims:
//! exhaustive biclique optimum, backtracking witness search, witness
//! verification, and exact r-colorability.
//!
//! These routines are deliberately simple and are frozen before the
//! pipelines are built, so pipeline bugs cannot leak into ground truth.

use crate::bipartite::BipartiteGraph;
use crate::bits;
use crate::generate::PartSpec;
use crate::graph::{Graph, VertexSet};
use crate::witness::{KrPlusWitness, WitnessViolation};
use thiserror::Error;

/// Default node budget for backtracking searches; overridable per call
/// (the CLI also honors the `TURANFORGE_BUDGET` environment variable).
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("subset size {s} exceeds side size {m}")]
    SubsetTooLarge { s: usize, m: usize },
    #[error("spec must request an edge inside the first part")]
    PlusEdgeRequired,
    #[error("search budget exhausted after {visited} nodes")]
    BudgetExhausted { visited: u64 },
}

/// Exact maximum `t` over all `s`-subsets `S` of side A of the common
/// neighborhood size in B, with the lexicographically first maximizer.
pub fn max_kst(f: &BipartiteGraph, s: usize) -> Result<(usize, VertexSet), OracleError> {
    let m = f.side_a_size();
    if s > m {
        return Err(OracleError::SubsetTooLarge { s, m });
    }
    let mut best_t = 0usize;
    let mut best: Vec<usize> = (0..s).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(s);
    let full = bits::full_mask(f.side_b_size());

    fn recurse(
        f: &BipartiteGraph,
        start: usize,
        chosen: &mut Vec<usize>,
        inter: &[u64],
        s: usize,
        best_t: &mut usize,
        best: &mut Vec<usize>,
    ) {
        if chosen.len() == s {
            let t = bits::count(inter);
            if t > *best_t {
                *best_t = t;
                *best = chosen.clone();
            }
            return;
        }
        let remaining = s - chosen.len();
        for u in start..=f.side_a_size().saturating_sub(remaining) {
            let mut next = inter.to_vec();
            bits::and_assign(&mut next, f.row(u));
            chosen.push(u);
            recurse(f, u + 1, chosen, &next, s, best_t, best);
            chosen.pop();
        }
    }

    if s == 0 {
        return Ok((bits::count(&full), VertexSet::empty()));
    }
    recurse(f, 0, &mut chosen, &full, s, &mut best_t, &mut best);
    Ok((best_t, VertexSet::new(best)))
}

/// Outcome of a budgeted witness search. `Absent` means the search space
/// was exhausted; `Indeterminate` means the budget ran out first and is
/// never conflated with absence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(KrPlusWitness),
    Absent,
    Indeterminate { visited: u64 },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&KrPlusWitness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

struct KrPlusSearch<'a> {
    g: &'a Graph,
    sizes: Vec<usize>, // search order: part 0 = spec part 1, rest descending
    budget: u64,
    visited: u64,
}

impl KrPlusSearch<'_> {
    fn place(&mut self, parts: &mut Vec<Vec<usize>>, part: usize) -> Result<bool, u64> {
        if part == self.sizes.len() {
            return Ok(true);
        }
        let min_first = if part >= 2 && self.sizes[part] == self.sizes[part - 1] {
            // equal-size parts are interchangeable: order them by first vertex
            parts[part - 1].first().copied().map(|v| v + 1).unwrap_or(0)
        } else {
            0
        };
        self.extend_part(parts, part, 0, min_first)
    }

    /// Candidates for part `part`: adjacent to every vertex chosen in the
    /// other parts, distinct from those already in this part, at least
    /// `floor`.
    fn candidates_for(&self, parts: &[Vec<usize>], part: usize, floor: usize) -> Vec<u64> {
        let mut cand = bits::full_mask(self.g.order());
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                if i == part {
                    bits::clear(&mut cand, v);
                } else {
                    bits::and_assign(&mut cand, self.g.row(v));
                }
            }
        }
        if floor > 0 {
            bits::clear_through(&mut cand, floor - 1);
        }
        cand
    }

    /// Fills part `part` up to its target size. Vertices after the first
    /// `seed_len` are chosen in ascending order; `min_first` bounds the
    /// first free choice (symmetry break between equal-size parts).
    fn extend_part(
        &mut self,
        parts: &mut Vec<Vec<usize>>,
        part: usize,
        seed_len: usize,
        min_first: usize,
    ) -> Result<bool, u64> {
        let need = self.sizes[part];
        if parts[part].len() == need {
            return self.place(parts, part + 1);
        }
        let floor = if parts[part].len() > seed_len {
            parts[part].last().unwrap() + 1
        } else {
            min_first
        };
        let cand = self.candidates_for(parts, part, floor);
        if bits::count(&cand) < need - parts[part].len() {
            return Ok(false);
        }
        for v in bits::iter_ones(&cand) {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(self.visited);
            }
            parts[part].push(v);
            match self.extend_part(parts, part, seed_len, min_first) {
                Ok(true) => return Ok(true),
                Ok(false) => {}
                Err(n) => return Err(n),
            }
            parts[part].pop();
        }
        Ok(false)
    }
}

/// Backtracking search for a complete multipartite subgraph shaped by
/// `spec` with one extra edge inside the first part. Complete within the
/// node budget; budget exhaustion is reported as a distinct outcome.
///
/// Parts after the first are explored largest first, vertices ascending
/// inside each part, so budgets are reproducible.
pub fn find_krplus_exact(
    g: &Graph,
    spec: &PartSpec,
    budget: u64,
) -> Result<SearchOutcome, OracleError> {
    if !spec.plus_edge() {
        return Err(OracleError::PlusEdgeRequired);
    }
    let s1 = spec.sizes()[0];
    let mut rest: Vec<usize> = spec.sizes()[1..].to_vec();
    rest.sort_unstable_by(|a, b| b.cmp(a));
    let mut sizes = vec![s1];
    sizes.extend_from_slice(&rest);

    let mut search = KrPlusSearch {
        g,
        sizes,
        budget,
        visited: 0,
    };

    // Fix the internal edge first, lexicographically over edges of g; the
    // rest of part 1 is free (it needs no internal adjacency).
    for (a, b) in g.edges() {
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); search.sizes.len()];
        parts[0] = vec![a, b];
        match search.extend_part(&mut parts, 0, 2, 0) {
            Ok(true) => {
                // restore the original part order for the witness
                let mut by_size: Vec<Vec<usize>> = parts[1..].to_vec();
                let mut witness_parts = vec![VertexSet::new(parts[0].clone())];
                for &want in &spec.sizes()[1..] {
                    let pos = by_size
                        .iter()
                        .position(|p| p.len() == want)
                        .expect("searched sizes are a permutation of the spec");
                    witness_parts.push(VertexSet::new(by_size.remove(pos)));
                }
                let w = KrPlusWitness {
                    parts: witness_parts,
                    extra_edge: (a, b),
                };
                debug_assert!(verify_krplus(g, &w).is_ok());
                return Ok(SearchOutcome::Found(w));
            }
            Ok(false) => {}
            Err(visited) => return Ok(SearchOutcome::Indeterminate { visited }),
        }
    }
    Ok(SearchOutcome::Absent)
}

/// Feasibility summary for balanced witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedReport {
    /// Largest `s >= 2` with a balanced witness of `r` parts of size `s`,
    /// or 0 when none exists.
    pub max_s: usize,
    /// Whether the minimal shape (first part 2, singletons elsewhere)
    /// exists at all.
    pub minimal_exists: bool,
}

/// Exact maximum balanced witness size, by descending search over `s`.
pub fn max_balanced_krplus(g: &Graph, r: usize, budget: u64) -> Result<BalancedReport, OracleError> {
    assert!(r >= 2, "balanced witnesses need at least two parts");
    let mut minimal_sizes = vec![1; r];
    minimal_sizes[0] = 2;
    let minimal = PartSpec::new(minimal_sizes, true).expect("valid minimal spec");
    let minimal_exists = match find_krplus_exact(g, &minimal, budget)? {
        SearchOutcome::Found(_) => true,
        SearchOutcome::Absent => false,
        SearchOutcome::Indeterminate { visited } => {
            return Err(OracleError::BudgetExhausted { visited })
        }
    };

    let mut s = g.order() / r;
    while s >= 2 {
        let spec = PartSpec::new(vec![s; r], true).expect("valid balanced spec");
        match find_krplus_exact(g, &spec, budget)? {
            SearchOutcome::Found(_) => {
                return Ok(BalancedReport {
                    max_s: s,
                    minimal_exists,
                })
            }
            SearchOutcome::Absent => s -= 1,
            SearchOutcome::Indeterminate { visited } => {
                return Err(OracleError::BudgetExhausted { visited })
            }
        }
    }
    Ok(BalancedReport {
        max_s: 0,
        minimal_exists,
    })
}

/// Checks a witness directly against `g`, reporting the first violated
/// clause: parts nonempty and disjoint, all cross pairs adjacent, first
/// part of size at least 2, extra edge inside the first part and present.
pub fn verify_krplus(g: &Graph, w: &KrPlusWitness) -> Result<(), WitnessViolation> {
    if w.parts.is_empty() {
        return Err(WitnessViolation::NoParts);
    }
    for (i, p) in w.parts.iter().enumerate() {
        if p.is_empty() {
            return Err(WitnessViolation::EmptyPart { part: i });
        }
        if let Some(v) = p.iter().find(|&v| v >= g.order()) {
            return Err(WitnessViolation::OutOfRange {
                vertex: v,
                order: g.order(),
            });
        }
    }
    for i in 0..w.parts.len() {
        for j in (i + 1)..w.parts.len() {
            if let Some(v) = w.parts[i].iter().find(|&v| w.parts[j].contains(v)) {
                return Err(WitnessViolation::PartsOverlap { a: i, b: j, vertex: v });
            }
            for u in w.parts[i].iter() {
                for v in w.parts[j].iter() {
                    if !g.has_edge(u, v) {
                        return Err(WitnessViolation::MissingCrossEdge {
                            u,
                            v,
                            pu: i,
                            pv: j,
                        });
                    }
                }
            }
        }
    }
    if w.parts[0].len() < 2 {
        return Err(WitnessViolation::FirstPartTooSmall {
            size: w.parts[0].len(),
        });
    }
    let (a, b) = w.extra_edge;
    if !w.parts[0].contains(a) {
        return Err(WitnessViolation::ExtraEdgeOutsideFirstPart { vertex: a });
    }
    if !w.parts[0].contains(b) {
        return Err(WitnessViolation::ExtraEdgeOutsideFirstPart { vertex: b });
    }
    if a == b || !g.has_edge(a, b) {
        return Err(WitnessViolation::ExtraEdgeMissing { u: a, v: b });
    }
    Ok(())
}

/// Exact backtracking search for a proper coloring with at most `r`
/// classes. Returns one verified coloring (class per vertex) or `None`.
pub fn is_r_partite(g: &Graph, r: usize) -> Option<Vec<usize>> {
    let n = g.order();
    if n == 0 {
        return Some(Vec::new());
    }
    if r == 0 {
        return None;
    }
    let mut colors = vec![usize::MAX; n];

    fn assign(g: &Graph, colors: &mut Vec<usize>, v: usize, r: usize, used: usize) -> bool {
        if v == g.order() {
            return true;
        }
        // only the first unused class is tried, killing class symmetry
        let limit = (used + 1).min(r);
        for c in 0..limit {
            if g.neighbors(v).all(|u| colors[u] != c) {
                colors[v] = c;
                if assign(g, colors, v + 1, r, used.max(c + 1)) {
                    return true;
                }
                colors[v] = usize::MAX;
            }
        }
        false
    }

    if assign(g, &mut colors, 0, r, 0) {
        debug_assert!(g
            .edges()
            .iter()
            .all(|&(u, v)| colors[u] != colors[v]));
        Some(colors)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_multipartite, turan_graph, turan_plus_edge};

    fn complete_bip(a: usize, b: usize) -> BipartiteGraph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, v));
            }
        }
        BipartiteGraph::new(a, b, &edges).unwrap()
    }

    #[test]
    fn max_kst_on_complete_bipartite() {
        let f = complete_bip(5, 5);
        let (t, s) = max_kst(&f, 3).unwrap();
        assert_eq!(t, 5);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn max_kst_on_bipartite_hexagon() {
        // parts {0,1,2} and {0',1',2'}; edges a_i - b_i and a_i - b_{i+1}
        let f = BipartiteGraph::new(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)])
            .unwrap();
        let (t, _) = max_kst(&f, 2).unwrap();
        assert_eq!(t, 1); // any two A-vertices share exactly one neighbor
    }

    #[test]
    fn max_kst_on_empty_graph_and_errors() {
        let f = BipartiteGraph::new(3, 4, &[]).unwrap();
        assert_eq!(max_kst(&f, 1).unwrap().0, 0);
        assert!(max_kst(&f, 4).is_err());
    }

    #[test]
    fn finds_witness_in_its_own_generator_graph() {
        let spec = PartSpec::new(vec![2, 2], true).unwrap();
        let g = complete_multipartite(&spec).unwrap();
        let out = find_krplus_exact(&g, &spec, DEFAULT_NODE_BUDGET).unwrap();
        let w = out.found().expect("witness must exist by construction");
        assert!(verify_krplus(&g, w).is_ok());
    }

    #[test]
    fn no_witness_in_triangle_free_graph() {
        let k33 = turan_graph(2, 6).unwrap();
        let spec = PartSpec::new(vec![2, 2], true).unwrap();
        assert_eq!(
            find_krplus_exact(&k33, &spec, DEFAULT_NODE_BUDGET).unwrap(),
            SearchOutcome::Absent
        );
    }

    #[test]
    fn budget_exhaustion_is_a_distinct_outcome() {
        let g = turan_plus_edge(2, 10).unwrap();
        let spec = PartSpec::new(vec![2, 4], true).unwrap();
        match find_krplus_exact(&g, &spec, 3).unwrap() {
            SearchOutcome::Indeterminate { visited } => assert!(visited > 3),
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn finds_book_in_turan_plus_edge() {
        let g = turan_plus_edge(2, 10).unwrap();
        let spec = PartSpec::new(vec![2, 4], true).unwrap();
        let out = find_krplus_exact(&g, &spec, DEFAULT_NODE_BUDGET).unwrap();
        assert!(out.found().is_some());
    }

    #[test]
    fn requires_plus_edge_spec() {
        let g = Graph::complete(4);
        let spec = PartSpec::new(vec![2, 2], false).unwrap();
        assert_eq!(
            find_krplus_exact(&g, &spec, 100),
            Err(OracleError::PlusEdgeRequired)
        );
    }

    #[test]
    fn balanced_report_examples() {
        let k5 = Graph::complete(5);
        let rep = max_balanced_krplus(&k5, 2, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(rep.max_s, 2); // K2+(3,3) needs 6 vertices
        assert!(rep.minimal_exists);

        let t8 = turan_graph(2, 8).unwrap();
        let rep = max_balanced_krplus(&t8, 2, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(rep.max_s, 0);
        assert!(!rep.minimal_exists); // no edge has a common neighbor
    }

    #[test]
    fn verify_reports_first_violation() {
        let g = turan_plus_edge(2, 8).unwrap(); // parts {0..3}, {4..7}, edge (0,1)
        let good = KrPlusWitness {
            parts: vec![VertexSet::new(vec![0, 1]), VertexSet::new(vec![4, 5, 6, 7])],
            extra_edge: (0, 1),
        };
        assert!(verify_krplus(&g, &good).is_ok());

        let small_first = KrPlusWitness {
            parts: vec![VertexSet::new(vec![0]), VertexSet::new(vec![4])],
            extra_edge: (0, 0),
        };
        assert_eq!(
            verify_krplus(&g, &small_first),
            Err(WitnessViolation::FirstPartTooSmall { size: 1 })
        );

        let missing_cross = KrPlusWitness {
            parts: vec![VertexSet::new(vec![0, 1]), VertexSet::new(vec![2, 4])],
            extra_edge: (0, 1),
        };
        assert!(matches!(
            verify_krplus(&g, &missing_cross),
            Err(WitnessViolation::MissingCrossEdge { .. })
        ));
    }

    #[test]
    fn coloring_examples() {
        let k33 = turan_graph(2, 6).unwrap();
        let col = is_r_partite(&k33, 2).unwrap();
        assert_eq!(col.iter().filter(|&&c| c == 0).count(), 3);

        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(is_r_partite(&c5, 2).is_none());
        assert!(is_r_partite(&c5, 3).is_some());

        assert!(is_r_partite(&Graph::complete(4), 3).is_none());
    }
}
