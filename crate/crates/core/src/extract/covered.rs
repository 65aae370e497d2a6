//! Extraction of a complete multipartite subgraph covered by a clique set:
//! every cross edge of the output lies inside some member of `M`.
//!
//! Primary strategy is recursive dependent choice: join the `(r-1)`-clique
//! shadow of `M` to the vertex set in an auxiliary bipartite graph, pick a
//! clique subset with a large common neighborhood, and recurse on the
//! selection. A budgeted backtracking search over the 2-shadow graph is
//! the fallback. Either way the covering predicate is verified
//! exhaustively before returning, so correctness never depends on which
//! strategy produced the parts.

use super::kst::best_kst_subset;
use super::{ExtractError, PipelineConfig};
use crate::bipartite::BipartiteGraph;
use crate::bits;
use crate::clique::{shadow, Clique, CliqueSet};
use crate::graph::{Graph, VertexSet};

/// Parts `P_1, ..., P_{r-1}` of size `s` and `P_r` of size at least
/// `t_min`, disjoint, with every cross edge inside some member of `m`
/// (`r` is the member size of `m`). Fails with a "not found" error,
/// distinct from precondition errors, when no family is found at the
/// requested sizes.
pub fn covered_multipartite(
    g: &Graph,
    m: &CliqueSet,
    s: usize,
    t_min: usize,
    cfg: &PipelineConfig,
) -> Result<Vec<VertexSet>, ExtractError> {
    covered_multipartite_within(g, m, s, t_min, cfg, None, None)
}

/// As [`covered_multipartite`], with optional vertex pools: part 1 drawn
/// from `first_pool`, all later parts (including the last) from
/// `rest_pool`.
pub(crate) fn covered_multipartite_within(
    g: &Graph,
    m: &CliqueSet,
    s: usize,
    t_min: usize,
    cfg: &PipelineConfig,
    first_pool: Option<&VertexSet>,
    rest_pool: Option<&VertexSet>,
) -> Result<Vec<VertexSet>, ExtractError> {
    if m.is_empty() {
        return Err(ExtractError::NoCliqueOfSize { size: m.size() });
    }
    if s == 0 {
        return Err(ExtractError::TargetSizeNotPositive { c: 0.0, n: g.order() });
    }

    let pooled = first_pool.is_some() || rest_pool.is_some();
    if !pooled {
        if let Some(parts) = covered_recursive(g.order(), m, s, t_min, cfg) {
            verify_covering(m, &parts, s, t_min)?;
            return Ok(parts);
        }
    }
    if let Some(parts) = covered_backtracking(g, m, s, t_min, cfg, first_pool, rest_pool) {
        verify_covering(m, &parts, s, t_min)?;
        return Ok(parts);
    }
    Err(ExtractError::NotFound {
        stage: "multipartite-cover",
        detail: format!(
            "no covered K_{}({}, ..., t>={}) over {} cliques",
            m.size(),
            s,
            t_min,
            m.len()
        ),
        trace: None,
    })
}

/// The auxiliary bipartite graph: A-side indexes the `(r-1)`-shadow of
/// `m`, B-side is `0..order`, with an edge where clique-plus-vertex is a
/// member of `m`.
fn auxiliary_bipartite(order: usize, m: &CliqueSet, a_side: &CliqueSet) -> BipartiteGraph {
    let mut edges = Vec::new();
    for (i, sub) in a_side.iter().enumerate() {
        for v in 0..order {
            if sub.vertices().contains(v) {
                continue;
            }
            let mut with_v: Vec<usize> = sub.as_slice().to_vec();
            let pos = with_v.partition_point(|&x| x < v);
            with_v.insert(pos, v);
            if m.contains_vertices(&with_v) {
                edges.push((i, v));
            }
        }
    }
    BipartiteGraph::new(a_side.len(), order, &edges).expect("indices in range by construction")
}

fn covered_recursive(
    order: usize,
    m: &CliqueSet,
    s: usize,
    t_min: usize,
    cfg: &PipelineConfig,
) -> Option<Vec<VertexSet>> {
    let r = m.size();
    if r == 1 {
        let all: VertexSet = m.iter().flat_map(|c| c.vertices().iter()).collect();
        if all.len() < t_min {
            return None;
        }
        return Some(vec![all]);
    }

    let a_side = shadow(m, r - 1).expect("shadow size r-1 valid for r >= 2");
    if a_side.is_empty() {
        return None;
    }
    let f = auxiliary_bipartite(order, m, &a_side);

    if r == 2 {
        // the selected singletons are the first part, the common
        // neighborhood is the rest
        let (_, sel) = best_kst_subset(&f, s.min(a_side.len()), cfg)?;
        if sel.len() < s {
            return None;
        }
        let chosen: Vec<usize> = sel.iter().collect();
        let part1: VertexSet = chosen
            .iter()
            .flat_map(|&i| a_side.members()[i].vertices().iter())
            .collect();
        if part1.len() < s {
            return None;
        }
        let t = f.common_b_neighborhood(&chosen).minus(&part1);
        if t.len() < t_min {
            return None;
        }
        return Some(vec![part1, t]);
    }

    for s_try in selection_schedule(s, a_side.len()) {
        let Some((_, sel)) = best_kst_subset(&f, s_try, cfg) else {
            continue;
        };
        if sel.len() < s_try {
            continue;
        }
        let chosen: Vec<usize> = sel.iter().collect();
        let t_side = f.common_b_neighborhood(&chosen);
        if t_side.is_empty() {
            continue;
        }
        let picked: Vec<Clique> = chosen
            .iter()
            .map(|&i| a_side.members()[i].clone())
            .collect();
        let sub_m = CliqueSet::from_sorted_unchecked(r - 1, picked);
        let Some(mut inner) = covered_recursive(order, &sub_m, s, s, cfg) else {
            continue;
        };
        // trim the recursive last part down to s
        if let Some(last) = inner.last_mut() {
            let trimmed: Vec<usize> = last.iter().take(s).collect();
            *last = VertexSet::from_sorted_unchecked(trimmed);
        }
        let used: VertexSet = inner.iter().flat_map(|p| p.iter()).collect();
        let t_final = t_side.minus(&used);
        if t_final.len() < t_min {
            continue;
        }
        inner.push(t_final);
        return Some(inner);
    }
    None
}

/// Clique-subset sizes to try at a recursion level: covering `s`-sized
/// parts pairwise needs about `s^2` cliques, so step up from there.
fn selection_schedule(s: usize, available: usize) -> Vec<usize> {
    let base = s * s;
    let mut out: Vec<usize> = [base, base + s, 2 * base, 4 * base, 8 * base]
        .iter()
        .copied()
        .filter(|&x| x >= 1 && x <= available)
        .collect();
    if out.is_empty() && available >= 1 {
        out.push(available.min(base.max(1)));
    }
    out.dedup();
    out
}

struct CoveredSearch<'a> {
    cover: &'a Graph,
    part_sizes: Vec<usize>, // the r-1 fixed-size parts
    pool_first: Vec<u64>,
    pool_rest: Vec<u64>,
    t_min: usize,
    budget: u64,
    visited: u64,
}

impl CoveredSearch<'_> {
    fn pool(&self, part: usize) -> &[u64] {
        if part == 0 {
            &self.pool_first
        } else {
            &self.pool_rest
        }
    }

    fn candidates(&self, parts: &[Vec<usize>], part: usize, floor: usize) -> Vec<u64> {
        let mut cand = self.pool(part).to_vec();
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                if i == part {
                    bits::clear(&mut cand, v);
                } else {
                    bits::and_assign(&mut cand, self.cover.row(v));
                }
            }
        }
        if floor > 0 {
            bits::clear_through(&mut cand, floor - 1);
        }
        cand
    }

    fn place(&mut self, parts: &mut Vec<Vec<usize>>, part: usize) -> Result<Option<VertexSet>, u64> {
        if part == self.part_sizes.len() {
            // the last part is everything still compatible
            let mut cand = self.pool_rest.clone();
            for p in parts.iter() {
                for &v in p {
                    bits::and_assign(&mut cand, self.cover.row(v));
                }
            }
            for p in parts.iter() {
                for &v in p {
                    bits::clear(&mut cand, v);
                }
            }
            if bits::count(&cand) < self.t_min {
                return Ok(None);
            }
            return Ok(Some(VertexSet::from_sorted_unchecked(
                bits::iter_ones(&cand).collect(),
            )));
        }
        let min_first = if part >= 2 && self.part_sizes[part] == self.part_sizes[part - 1] {
            parts[part - 1].first().copied().map(|v| v + 1).unwrap_or(0)
        } else {
            0
        };
        self.fill(parts, part, min_first)
    }

    fn fill(
        &mut self,
        parts: &mut Vec<Vec<usize>>,
        part: usize,
        min_first: usize,
    ) -> Result<Option<VertexSet>, u64> {
        let need = self.part_sizes[part];
        if parts[part].len() == need {
            return self.place(parts, part + 1);
        }
        let floor = parts[part].last().map(|&v| v + 1).unwrap_or(min_first);
        let cand = self.candidates(parts, part, floor);
        if bits::count(&cand) < need - parts[part].len() {
            return Ok(None);
        }
        for v in bits::iter_ones(&cand) {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(self.visited);
            }
            parts[part].push(v);
            match self.fill(parts, part, min_first) {
                Ok(Some(last)) => return Ok(Some(last)),
                Ok(None) => {}
                Err(n) => return Err(n),
            }
            parts[part].pop();
        }
        Ok(None)
    }
}

/// Backtracking search for the covered family inside the 2-shadow graph
/// of `m`: a complete multipartite subgraph there is exactly a family
/// whose cross edges all lie inside members.
fn covered_backtracking(
    g: &Graph,
    m: &CliqueSet,
    s: usize,
    t_min: usize,
    cfg: &PipelineConfig,
    first_pool: Option<&VertexSet>,
    rest_pool: Option<&VertexSet>,
) -> Option<Vec<VertexSet>> {
    let r = m.size();
    let cover = shadow_graph(g.order(), m);

    let as_mask = |pool: Option<&VertexSet>| -> Vec<u64> {
        match pool {
            Some(set) => {
                let mut mask = vec![0u64; crate::bits::words_for(g.order())];
                for v in set.iter() {
                    bits::set(&mut mask, v);
                }
                mask
            }
            None => bits::full_mask(g.order()),
        }
    };

    if r == 1 {
        let pool = as_mask(first_pool);
        let mut verts: Vec<usize> = Vec::new();
        for c in m.iter() {
            for v in c.vertices().iter() {
                if bits::get(&pool, v) {
                    verts.push(v);
                }
            }
        }
        let all = VertexSet::new(verts);
        if all.len() < t_min {
            return None;
        }
        return Some(vec![all]);
    }

    let mut search = CoveredSearch {
        cover: &cover,
        part_sizes: vec![s; r - 1],
        pool_first: as_mask(first_pool),
        pool_rest: as_mask(rest_pool),
        t_min,
        budget: cfg.covered_search_budget,
        visited: 0,
    };
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); r - 1];
    match search.place(&mut parts, 0) {
        Ok(Some(last)) => {
            let mut out: Vec<VertexSet> = parts.into_iter().map(VertexSet::new).collect();
            out.push(last);
            Some(out)
        }
        Ok(None) | Err(_) => None,
    }
}

/// The graph on `0..order` whose edges are the 2-shadow of `m`.
pub(crate) fn shadow_graph(order: usize, m: &CliqueSet) -> Graph {
    if m.size() < 2 {
        return Graph::empty(order);
    }
    let pairs = shadow(m, 2).expect("2-shadow valid for size >= 2");
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .map(|c| (c.as_slice()[0], c.as_slice()[1]))
        .collect();
    Graph::new(order, &edges).expect("shadow edges in range")
}

/// Exhaustive check of the output contract: part count and sizes,
/// disjointness, and the covering predicate for every cross pair.
fn verify_covering(
    m: &CliqueSet,
    parts: &[VertexSet],
    s: usize,
    t_min: usize,
) -> Result<(), ExtractError> {
    let r = m.size();
    let fail = |msg: String| -> Result<(), ExtractError> {
        Err(ExtractError::Internal(format!("covering check failed: {msg}")))
    };
    if parts.len() != r {
        return fail(format!("expected {r} parts, got {}", parts.len()));
    }
    for (i, p) in parts.iter().enumerate() {
        if i + 1 < r && p.len() != s {
            return fail(format!("part {i} has size {} != {s}", p.len()));
        }
    }
    if parts[r - 1].len() < t_min {
        return fail(format!(
            "last part has size {} < {t_min}",
            parts[r - 1].len()
        ));
    }
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            if parts[i].iter().any(|v| parts[j].contains(v)) {
                return fail(format!("parts {i} and {j} overlap"));
            }
        }
    }
    let pairs = shadow(m, 2.min(m.size())).expect("shadow of small size");
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            for u in parts[i].iter() {
                for v in parts[j].iter() {
                    let key = if u < v { [u, v] } else { [v, u] };
                    if !pairs.contains_vertices(&key) {
                        return fail(format!("cross pair ({u}, {v}) not inside any member"));
                    }
                }
            }
        }
    }
    Ok(())
}
